#include "psq/star.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "psq/error.hpp"

namespace psq {

namespace {

// i^s / (2^s s!) as an exact Gaussian rational.
GaussRat series_weight(int s) {
  mpq_class w(1, 1);
  w /= mpq_class(factorial(s));
  w /= mpq_class(mpz_class(1) << s);
  switch (s % 4) {
    case 0: return {w, 0};
    case 1: return {0, w};
    case 2: return {-w, 0};
    default: return {0, -w};
  }
}

struct StarTerm {
  int s;
  GaussRat weight;  // already includes (i/2)^s / s!
};

// Nonzero orders of q^a p^b * q^c p^d; each contributes weight * hbar^s q^{a+c-s} p^{b+d-s}.
std::vector<StarTerm> monomial_star(int a, int b, int c, int d) {
  std::vector<StarTerm> out;
  const int smax = std::min(a, d) + std::min(b, c);
  for (int s = 0; s <= smax; ++s) {
    mpz_class sum = 0;
    const int tlo = std::max(0, s - std::min(a, d));
    const int thi = std::min({s, b, c});
    for (int t = tlo; t <= thi; ++t) {
      mpz_class term = binomial(s, t) * falling_factorial(a, s - t) * falling_factorial(b, t) *
                       falling_factorial(d, s - t) * falling_factorial(c, t);
      if (t % 2) sum -= term; else sum += term;
    }
    if (sum == 0) continue;
    GaussRat w = series_weight(s);
    w *= GaussRat(mpq_class(sum));
    out.push_back({s, std::move(w)});
  }
  return out;
}

using MonoKey = std::array<int, 4>;

// Generic series with an exponential on one side and a polynomial on the other.
// `poly_on_right` selects f = exp, g = poly versus f = poly, g = exp.
ExpPoly mixed_star(const ExpPoly& e, const PhasePoly& poly, bool poly_on_right) {
  if (e.is_zero() || poly.is_zero()) return {};
  std::map<Powers, ExpPoly> cache;
  auto deriv = [&](int a, int b) -> const ExpPoly& {
    auto it = cache.find({a, b});
    if (it != cache.end()) return it->second;
    ExpPoly d = e.d_q(a).d_p(b);
    return cache.emplace(Powers{a, b}, std::move(d)).first->second;
  };
  const int dq = poly.degree_q();
  const int dp = poly.degree_p();
  const int smax = dq + dp;
  PhasePoly pre;
  for (int s = 0; s <= smax; ++s) {
    Coeff w(Monomial::symbol(kHbar, s), series_weight(s));
    for (int t = 0; t <= s; ++t) {
      // poly_on_right: (d_q^{s-t} d_p^t E)(d_p^{s-t} d_q^t P)
      // poly on left : (d_q^{s-t} d_p^t P)(d_p^{s-t} d_q^t E)
      PhasePoly pd;
      const ExpPoly* ed = nullptr;
      if (poly_on_right) {
        if (s - t > dp || t > dq) continue;
        pd = poly.d_p(s - t).d_q(t);
        if (pd.is_zero()) continue;
        ed = &deriv(s - t, t);
      } else {
        if (s - t > dq || t > dp) continue;
        pd = poly.d_q(s - t).d_p(t);
        if (pd.is_zero()) continue;
        ed = &deriv(t, s - t);
      }
      Coeff cw = w * GaussRat(mpq_class(binomial(s, t)));
      if (t % 2) cw = -cw;
      pre += ed->prefactor() * pd * cw;
    }
  }
  return ExpPoly(std::move(pre), e.phase());
}

}  // namespace

PhasePoly star(const PhasePoly& f, const PhasePoly& g, const std::optional<Truncation>& trunc) {
  PhasePoly r;
  std::map<MonoKey, std::vector<StarTerm>> table;
  for (const auto& [pa, ca] : f.terms()) {
    const int ca_min = trunc ? ca.min_degree(trunc->symbol) : 0;
    for (const auto& [pb, cb] : g.terms()) {
      if (trunc && ca_min + cb.min_degree(trunc->symbol) > trunc->max_degree) continue;
      Coeff prod = ca * cb;
      if (trunc) prod = prod.truncate(trunc->symbol, trunc->max_degree);
      if (prod.is_zero()) continue;
      MonoKey key{pa.q, pa.p, pb.q, pb.p};
      auto it = table.find(key);
      if (it == table.end()) it = table.emplace(key, monomial_star(pa.q, pa.p, pb.q, pb.p)).first;
      for (const auto& st : it->second) {
        Coeff c = prod * Coeff(Monomial::symbol(kHbar, st.s), st.weight);
        if (trunc) c = c.truncate(trunc->symbol, trunc->max_degree);
        r.add_term({pa.q + pb.q - st.s, pa.p + pb.p - st.s}, c);
      }
    }
  }
  return r;
}

ExpPoly star(const ExpPoly& f, const PhasePoly& g) { return mixed_star(f, g, true); }
ExpPoly star(const PhasePoly& f, const ExpPoly& g) { return mixed_star(g, f, false); }

PhaseFn star(const PhaseFn& f, const PhaseFn& g) {
  return std::visit(
      [](const auto& a, const auto& b) -> PhaseFn {
        using A = std::decay_t<decltype(a)>;
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<A, ExpPoly> && std::is_same_v<B, ExpPoly>) {
          throw Error(ErrorCode::UnsupportedProduct,
                      "star product of two exponentials has no terminating series");
        } else {
          return star(a, b);
        }
      },
      f, g);
}

PhasePoly moyal_bracket(const PhasePoly& f, const PhasePoly& g) { return star(f, g) - star(g, f); }
ExpPoly moyal_bracket(const ExpPoly& f, const PhasePoly& g) { return star(f, g) - star(g, f); }
ExpPoly moyal_bracket(const PhasePoly& f, const ExpPoly& g) { return star(f, g) - star(g, f); }

PhaseFn moyal_bracket(const PhaseFn& f, const PhaseFn& g) {
  return std::visit(
      [](const auto& a, const auto& b) -> PhaseFn {
        using A = std::decay_t<decltype(a)>;
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<A, ExpPoly> && std::is_same_v<B, ExpPoly>) {
          throw Error(ErrorCode::UnsupportedProduct,
                      "Moyal bracket of two exponentials has no terminating series");
        } else {
          return moyal_bracket(a, b);
        }
      },
      f, g);
}

PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g) {
  return f.d_q() * g.d_p() - f.d_p() * g.d_q();
}

std::vector<PhasePoly> star_exponential(const PhasePoly& f, const Coeff& lambda, int order,
                                        const std::optional<Truncation>& trunc) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "series order must be non-negative");
  std::vector<PhasePoly> terms;
  terms.reserve(static_cast<std::size_t>(order) + 1);
  terms.emplace_back(1);
  for (int k = 1; k <= order; ++k) {
    PhasePoly next = star(terms.back(), f, trunc) * (lambda * Coeff::rational(1, k));
    if (trunc) next = next.truncate(trunc->symbol, trunc->max_degree);
    terms.push_back(std::move(next));
  }
  return terms;
}

PhasePoly sum_series(const std::vector<PhasePoly>& terms) {
  PhasePoly s;
  for (const auto& t : terms) s += t;
  return s;
}

PhasePoly star_inverse_series(const PhasePoly& f, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "series order must be non-negative");
  const Coeff c = f.constant_term();
  if (c.is_zero())
    throw Error(ErrorCode::NonInvertibleConstantTerm, "constant part of the function is zero");
  if (!c.is_single_term())
    throw Error(ErrorCode::NonInvertibleConstantTerm,
                "constant part must be a single invertible term");
  const Coeff cinv = c.inverse();
  const PhasePoly n = PhasePoly(1) - f * cinv;
  PhasePoly power(1);
  PhasePoly sum(1);
  for (int k = 1; k <= order; ++k) {
    power = star(power, n);
    sum += power;
  }
  return sum * cinv;
}

PhasePoly apply_diffop(const DiffOp& d, const PhasePoly& f) { return d.apply(f); }
ExpPoly apply_diffop(const DiffOp& d, const ExpPoly& f) { return d.apply(f); }
PhaseFn apply_diffop(const DiffOp& d, const PhaseFn& f) {
  return std::visit([&](const auto& x) -> PhaseFn { return d.apply(x); }, f);
}

// f*u - u*f: the (j = d_q order, k = d_p order) coefficient is
// (i hbar/2)^s/s! C(s,j) [(-1)^j - (-1)^k] d_q^k d_p^j f, s = j + k (odd only).
DiffOp lie_operator_of(const PhasePoly& f) {
  DiffOp op;
  const int dq = f.degree_q();
  const int dp = f.degree_p();
  for (int k = 0; k <= dq; ++k) {
    for (int j = 0; j <= dp; ++j) {
      const int s = j + k;
      if (s % 2 == 0) continue;
      PhasePoly c = f.d_q(k).d_p(j);
      if (c.is_zero()) continue;
      const int sign = (j % 2 ? -1 : 1) - (k % 2 ? -1 : 1);
      GaussRat w = series_weight(s) * GaussRat(mpq_class(binomial(s, j) * sign));
      op.add_term({j, k}, c * Coeff(Monomial::symbol(kHbar, s), w));
    }
  }
  return op;
}

DiffOp star_left_operator(const PhasePoly& f) {
  DiffOp op;
  const int dq = f.degree_q();
  const int dp = f.degree_p();
  for (int s = 0; s <= dq + dp; ++s) {
    for (int t = 0; t <= s; ++t) {
      PhasePoly c = f.d_q(s - t).d_p(t);
      if (c.is_zero()) continue;
      GaussRat w = series_weight(s) * GaussRat(mpq_class(binomial(s, t) * (t % 2 ? -1 : 1)));
      op.add_term({t, s - t}, c * Coeff(Monomial::symbol(kHbar, s), w));
    }
  }
  return op;
}

DiffOp star_right_operator(const PhasePoly& g) {
  DiffOp op;
  const int dq = g.degree_q();
  const int dp = g.degree_p();
  for (int s = 0; s <= dq + dp; ++s) {
    for (int t = 0; t <= s; ++t) {
      PhasePoly c = g.d_p(s - t).d_q(t);
      if (c.is_zero()) continue;
      GaussRat w = series_weight(s) * GaussRat(mpq_class(binomial(s, t) * (t % 2 ? -1 : 1)));
      op.add_term({s - t, t}, c * Coeff(Monomial::symbol(kHbar, s), w));
    }
  }
  return op;
}

PhasePoly classical_limit(const PhasePoly& f) {
  PhasePoly r;
  for (const auto& [pw, c] : f.terms()) {
    if (c.has_negative_power(kHbar))
      throw Error(ErrorCode::DomainError, "classical limit of a negative power of hbar");
    r.add_term(pw, c.coefficient_of(kHbar, 0));
  }
  return r;
}

}  // namespace psq
