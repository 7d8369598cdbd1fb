#include "psq/diffop.hpp"

#include <algorithm>

namespace psq {

DiffOp DiffOp::derivative(int dq, int dp, const PhasePoly& coeff) {
  DiffOp d;
  d.add_term({dq, dp}, coeff);
  return d;
}

void DiffOp::add_term(Powers orders, const PhasePoly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(orders, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int DiffOp::max_order() const {
  int m = 0;
  for (const auto& [o, c] : terms_) m = std::max(m, o.q + o.p);
  return m;
}

PhasePoly DiffOp::apply(const PhasePoly& f) const {
  PhasePoly r;
  for (const auto& [o, c] : terms_) r += c * f.d_q(o.q).d_p(o.p);
  return r;
}

ExpPoly DiffOp::apply(const ExpPoly& f) const {
  PhasePoly pre;
  for (const auto& [o, c] : terms_) pre += c * f.d_q(o.q).d_p(o.p).prefactor();
  return ExpPoly(std::move(pre), f.phase());
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

DiffOp operator*(DiffOp a, const Coeff& c) {
  DiffOp r;
  for (const auto& [k, v] : a.terms_) r.add_term(k, v * c);
  return r;
}

// (c1 D^a)(c2 D^b) = c1 sum_{g<=a} C(a,g) (D^g c2) D^{a-g+b}, applied per axis.
DiffOp operator*(const DiffOp& a, const DiffOp& b) {
  DiffOp r;
  for (const auto& [oa, ca] : a.terms_) {
    for (const auto& [ob, cb] : b.terms_) {
      for (int gq = 0; gq <= oa.q; ++gq) {
        PhasePoly dq = cb.d_q(gq);
        if (dq.is_zero()) break;
        for (int gp = 0; gp <= oa.p; ++gp) {
          PhasePoly dqp = dq.d_p(gp);
          if (dqp.is_zero()) break;
          mpz_class w = binomial(oa.q, gq) * binomial(oa.p, gp);
          r.add_term({oa.q - gq + ob.q, oa.p - gp + ob.p},
                     ca * dqp * Coeff(GaussRat(mpq_class(w))));
        }
      }
    }
  }
  return r;
}

DiffOp DiffOp::pow(int e) const {
  DiffOp r = identity();
  for (int k = 0; k < e; ++k) r = *this * r;
  return r;
}

}  // namespace psq
