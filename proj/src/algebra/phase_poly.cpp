#include "psq/phase_poly.hpp"

#include <algorithm>

#include "psq/error.hpp"

namespace psq {

void PhasePoly::add_term(Powers pw, const Coeff& c) {
  if (c.is_zero()) return;
  if (pw.q < 0 || pw.p < 0) throw Error(ErrorCode::InvalidArgument, "negative phase-space power");
  auto [it, inserted] = terms_.try_emplace(pw, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool PhasePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Powers{0, 0});
}

Coeff PhasePoly::constant_term() const {
  auto it = terms_.find({0, 0});
  return it == terms_.end() ? Coeff{} : it->second;
}

int PhasePoly::degree_q() const {
  int d = 0;
  for (const auto& [pw, c] : terms_) d = std::max(d, pw.q);
  return d;
}

int PhasePoly::degree_p() const {
  int d = 0;
  for (const auto& [pw, c] : terms_) d = std::max(d, pw.p);
  return d;
}

int PhasePoly::total_degree() const {
  int d = 0;
  for (const auto& [pw, c] : terms_) d = std::max(d, pw.q + pw.p);
  return d;
}

PhasePoly PhasePoly::d_q(int order) const {
  PhasePoly r;
  for (const auto& [pw, c] : terms_) {
    if (pw.q < order) continue;
    r.add_term({pw.q - order, pw.p}, c * GaussRat(mpq_class(falling_factorial(pw.q, order))));
  }
  return r;
}

PhasePoly PhasePoly::d_p(int order) const {
  PhasePoly r;
  for (const auto& [pw, c] : terms_) {
    if (pw.p < order) continue;
    r.add_term({pw.q, pw.p - order}, c * GaussRat(mpq_class(falling_factorial(pw.p, order))));
  }
  return r;
}

PhasePoly PhasePoly::pow(int e) const {
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative power of a polynomial");
  PhasePoly result(1);
  PhasePoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

PhasePoly PhasePoly::integrate_q() const {
  PhasePoly r;
  for (const auto& [pw, c] : terms_)
    r.add_term({pw.q + 1, pw.p}, c * GaussRat(mpq_class(1, pw.q + 1)));
  return r;
}

PhasePoly PhasePoly::compose(const PhasePoly& new_q, const PhasePoly& new_p) const {
  std::map<int, PhasePoly> qpow, ppow;
  auto power_of = [](std::map<int, PhasePoly>& cache, const PhasePoly& base, int e) {
    auto it = cache.find(e);
    if (it == cache.end()) it = cache.emplace(e, base.pow(e)).first;
    return it->second;
  };
  PhasePoly r;
  for (const auto& [pw, c] : terms_)
    r += power_of(qpow, new_q, pw.q) * power_of(ppow, new_p, pw.p) * c;
  return r;
}

PhasePoly PhasePoly::substitute_symbol(const std::string& name, const Coeff& value) const {
  PhasePoly r;
  for (const auto& [pw, c] : terms_) r.add_term(pw, c.substitute(name, value));
  return r;
}

PhasePoly PhasePoly::truncate(const std::string& name, int max_deg) const {
  PhasePoly r;
  for (const auto& [pw, c] : terms_) r.add_term(pw, c.truncate(name, max_deg));
  return r;
}

PhasePoly PhasePoly::coefficient_of(const std::string& name, int deg) const {
  PhasePoly r;
  for (const auto& [pw, c] : terms_) r.add_term(pw, c.coefficient_of(name, deg));
  return r;
}

PhasePoly PhasePoly::map_coeffs(Coeff (*fn)(const Coeff&)) const {
  PhasePoly r;
  for (const auto& [pw, c] : terms_) r.add_term(pw, fn(c));
  return r;
}

std::complex<double> PhasePoly::evaluate(
    std::complex<double> qv, std::complex<double> pv,
    const std::map<std::string, std::complex<double>>& params) const {
  std::complex<double> sum = 0.0;
  for (const auto& [pw, c] : terms_)
    sum += c.evaluate(params) * std::pow(qv, pw.q) * std::pow(pv, pw.p);
  return sum;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& o) {
  for (const auto& [pw, c] : o.terms_) add_term(pw, c);
  return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& o) {
  for (const auto& [pw, c] : o.terms_) add_term(pw, -c);
  return *this;
}

PhasePoly& PhasePoly::operator*=(const Coeff& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  Terms next;
  for (auto& [pw, v] : terms_) {
    Coeff prod = v * c;
    if (!prod.is_zero()) next.emplace(pw, std::move(prod));
  }
  terms_ = std::move(next);
  return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
  PhasePoly r;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) r.add_term({pa.q + pb.q, pa.p + pb.p}, ca * cb);
  return r;
}

PhasePoly PhasePoly::operator-() const {
  PhasePoly r = *this;
  for (auto& [pw, c] : r.terms_) c = -c;
  return r;
}

}  // namespace psq
