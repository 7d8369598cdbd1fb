#include "psq/weyl.hpp"

#include <algorithm>

#include "psq/error.hpp"
#include "psq/star.hpp"

namespace psq {

void OpPoly::add_term(Powers pw, const Coeff& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(pw, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OpPoly& OpPoly::operator+=(const OpPoly& o) {
  for (const auto& [pw, c] : o.terms_) add_term(pw, c);
  return *this;
}

OpPoly& OpPoly::operator-=(const OpPoly& o) {
  for (const auto& [pw, c] : o.terms_) add_term(pw, -c);
  return *this;
}

OpPoly& OpPoly::operator*=(const Coeff& c) {
  Terms next;
  for (const auto& [pw, v] : terms_) {
    Coeff prod = v * c;
    if (!prod.is_zero()) next.emplace(pw, std::move(prod));
  }
  terms_ = std::move(next);
  return *this;
}

OpPoly OpPoly::operator-() const {
  OpPoly r = *this;
  for (auto& [pw, c] : r.terms_) c = -c;
  return r;
}

// phat^n qhat^m = sum_k (-i hbar)^k k! C(n,k) C(m,k) qhat^{m-k} phat^{n-k}
OpPoly op_mul(const OpPoly& a, const OpPoly& b) {
  OpPoly r;
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      const Coeff prod = ca * cb;
      const int n = pa.p;
      const int m = pb.q;
      for (int k = 0; k <= std::min(n, m); ++k) {
        mpq_class w(factorial(k) * binomial(n, k) * binomial(m, k));
        // (-i)^k
        GaussRat g;
        switch (k % 4) {
          case 0: g = {w, 0}; break;
          case 1: g = {0, -w}; break;
          case 2: g = {-w, 0}; break;
          default: g = {0, w}; break;
        }
        r.add_term({pa.q + m - k, n - k + pb.p}, prod * Coeff(Monomial::symbol(kHbar, k), g));
      }
    }
  }
  return r;
}

OpPoly op_pow(const OpPoly& a, int e) {
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative operator power");
  OpPoly r(1);
  for (int k = 0; k < e; ++k) r = op_mul(r, a);
  return r;
}

OpPoly commutator(const OpPoly& a, const OpPoly& b) { return op_mul(a, b) - op_mul(b, a); }

OpPoly quantize(const PhasePoly& f) {
  OpPoly r;
  for (const auto& [pw, c] : f.terms()) {
    const int m = pw.q;
    const OpPoly pn = OpPoly::phat(pw.p);
    OpPoly sym;
    for (int j = 0; j <= m; ++j) {
      OpPoly word = op_mul(op_mul(OpPoly::qhat(j), pn), OpPoly::qhat(m - j));
      sym += word * Coeff(GaussRat(mpq_class(binomial(m, j))));
    }
    r += sym * (c * Coeff(GaussRat(mpq_class(mpz_class(1), mpz_class(1) << m))));
  }
  return r;
}

PhasePoly dequantize(const OpPoly& a) {
  PhasePoly r;
  for (const auto& [pw, c] : a.terms()) r += star(PhasePoly::q(pw.q), PhasePoly::p(pw.p)) * c;
  return r;
}

std::vector<OpPoly> op_conjugate_series(const OpPoly& f, const OpPoly& u, const Coeff& lambda,
                                        int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "series order must be non-negative");
  std::vector<OpPoly> out;
  out.push_back(u);
  OpPoly nested = u;
  Coeff weight(1);
  for (int k = 1; k <= order; ++k) {
    nested = commutator(f, nested);
    weight = weight * lambda * Coeff::rational(1, k);
    out.push_back(nested * weight);
  }
  return out;
}

}  // namespace psq
