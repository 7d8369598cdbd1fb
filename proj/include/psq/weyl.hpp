#pragma once

#include <map>
#include <vector>

#include "psq/phase_poly.hpp"

namespace psq {

/// Operator polynomial sum c_{mn} qhat^m phat^n kept in normal order
/// (every qhat to the left of every phat), with [qhat, phat] = i hbar.
class OpPoly {
 public:
  using Terms = std::map<Powers, Coeff>;

  OpPoly() = default;
  OpPoly(long c) : OpPoly(Coeff(c)) {}
  OpPoly(const Coeff& c) { add_term({0, 0}, c); }
  OpPoly(Powers pw, const Coeff& c) { add_term(pw, c); }

  static OpPoly qhat(int power = 1) { return OpPoly({power, 0}, Coeff(1)); }
  static OpPoly phat(int power = 1) { return OpPoly({0, power}, Coeff(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  OpPoly& operator+=(const OpPoly& o);
  OpPoly& operator-=(const OpPoly& o);
  OpPoly& operator*=(const Coeff& c);
  friend OpPoly operator+(OpPoly a, const OpPoly& b) { return a += b; }
  friend OpPoly operator-(OpPoly a, const OpPoly& b) { return a -= b; }
  friend OpPoly operator*(OpPoly a, const Coeff& c) { return a *= c; }
  OpPoly operator-() const;

  friend bool operator==(const OpPoly& a, const OpPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const OpPoly& a, const OpPoly& b) { return !(a == b); }

  void add_term(Powers pw, const Coeff& c);

 private:
  Terms terms_;
};

/// Normal-ordered operator product.
OpPoly op_mul(const OpPoly& a, const OpPoly& b);
OpPoly op_pow(const OpPoly& a, int e);
OpPoly commutator(const OpPoly& a, const OpPoly& b);

/// Weyl (symmetric) quantization via the McCoy symmetrization
/// q^m p^n -> 2^{-m} sum_j C(m,j) qhat^j phat^n qhat^{m-j}.
OpPoly quantize(const PhasePoly& f);

/// Weyl symbol of a normal-ordered operator: qhat^m phat^n -> q^m * p^n.
PhasePoly dequantize(const OpPoly& a);

/// Terms lambda^k/k! ad_f^k(u), k = 0..order, of exp(lambda f) u exp(-lambda f).
std::vector<OpPoly> op_conjugate_series(const OpPoly& f, const OpPoly& u, const Coeff& lambda,
                                        int order);

}  // namespace psq
