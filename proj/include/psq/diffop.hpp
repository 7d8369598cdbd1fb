#pragma once

#include <map>

#include "psq/exp_poly.hpp"

namespace psq {

/// Differential operator sum_{j,k} c_{jk}(q,p) d_q^j d_p^k with polynomial
/// coefficients written to the left of the derivatives.
class DiffOp {
 public:
  using Terms = std::map<Powers, PhasePoly>;  // key: (d_q order, d_p order)

  DiffOp() = default;
  static DiffOp identity() { return derivative(0, 0, PhasePoly(1)); }
  static DiffOp derivative(int dq, int dp, const PhasePoly& coeff = PhasePoly(1));
  static DiffOp multiply(const PhasePoly& coeff) { return derivative(0, 0, coeff); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_order() const;

  PhasePoly apply(const PhasePoly& f) const;
  ExpPoly apply(const ExpPoly& f) const;

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Coeff& c);
  /// Operator composition (a*b)(f) = a(b(f)), re-normalised with coefficients on the left.
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);
  DiffOp pow(int e) const;

  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

  void add_term(Powers orders, const PhasePoly& coeff);

 private:
  Terms terms_;
};

}  // namespace psq
