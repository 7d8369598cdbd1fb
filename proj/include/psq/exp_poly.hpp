#pragma once

#include "psq/phase_poly.hpp"

namespace psq {

/// prefactor * exp(phase) with polynomial prefactor and phase. A zero
/// prefactor always carries a zero phase so that equality stays canonical.
class ExpPoly {
 public:
  ExpPoly() = default;
  ExpPoly(PhasePoly prefactor, PhasePoly phase);
  static ExpPoly exp(PhasePoly phase) { return ExpPoly(PhasePoly(1), std::move(phase)); }

  const PhasePoly& prefactor() const { return prefactor_; }
  const PhasePoly& phase() const { return phase_; }
  bool is_zero() const { return prefactor_.is_zero(); }

  ExpPoly d_q(int order = 1) const;
  ExpPoly d_p(int order = 1) const;

  /// Sum of two ExpPolys sharing a phase (or with one side zero).
  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  ExpPoly operator-() const { return ExpPoly(-prefactor_, phase_); }

  /// Pointwise products: phases add, prefactors multiply.
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(const ExpPoly& a, const PhasePoly& b) {
    return ExpPoly(a.prefactor_ * b, a.phase_);
  }
  friend ExpPoly operator*(const PhasePoly& b, const ExpPoly& a) { return a * b; }

  ExpPoly substitute_symbol(const std::string& name, const Coeff& value) const {
    return ExpPoly(prefactor_.substitute_symbol(name, value), phase_.substitute_symbol(name, value));
  }

  std::complex<double> evaluate(std::complex<double> qv, std::complex<double> pv,
                                const std::map<std::string, std::complex<double>>& params) const;

  friend bool operator==(const ExpPoly& a, const ExpPoly& b) {
    return a.prefactor_ == b.prefactor_ && a.phase_ == b.phase_;
  }
  friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return !(a == b); }

 private:
  PhasePoly prefactor_;
  PhasePoly phase_;
};

}  // namespace psq
