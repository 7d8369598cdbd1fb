#include "psq/exp_poly.hpp"

#include "psq/error.hpp"

namespace psq {

ExpPoly::ExpPoly(PhasePoly prefactor, PhasePoly phase)
    : prefactor_(std::move(prefactor)), phase_(std::move(phase)) {
  if (prefactor_.is_zero()) phase_ = PhasePoly{};
}

ExpPoly ExpPoly::d_q(int order) const {
  PhasePoly pre = prefactor_;
  const PhasePoly s = phase_.d_q();
  for (int k = 0; k < order; ++k) pre = pre.d_q() + pre * s;
  return ExpPoly(std::move(pre), phase_);
}

ExpPoly ExpPoly::d_p(int order) const {
  PhasePoly pre = prefactor_;
  const PhasePoly s = phase_.d_p();
  for (int k = 0; k < order; ++k) pre = pre.d_p() + pre * s;
  return ExpPoly(std::move(pre), phase_);
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (phase_ != o.phase_)
    throw Error(ErrorCode::IncompatiblePhase, "cannot add exponentials with different phases");
  *this = ExpPoly(prefactor_ + o.prefactor_, phase_);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) { return *this += -o; }

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  return ExpPoly(a.prefactor_ * b.prefactor_, a.phase_ + b.phase_);
}

std::complex<double> ExpPoly::evaluate(
    std::complex<double> qv, std::complex<double> pv,
    const std::map<std::string, std::complex<double>>& params) const {
  return prefactor_.evaluate(qv, pv, params) * std::exp(phase_.evaluate(qv, pv, params));
}

}  // namespace psq
