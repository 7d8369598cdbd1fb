#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "psq/coeff.hpp"

namespace psq {

/// Exponent pair (q-degree, p-degree) of a phase-space monomial.
struct Powers {
  int q = 0;
  int p = 0;

  friend bool operator==(const Powers& a, const Powers& b) { return a.q == b.q && a.p == b.p; }
  friend bool operator<(const Powers& a, const Powers& b) {
    return a.q != b.q ? a.q < b.q : a.p < b.p;
  }
};

/// Phase-space polynomial sum_{m,n} c_{mn} q^m p^n with exact coefficients.
class PhasePoly {
 public:
  using Terms = std::map<Powers, Coeff>;

  PhasePoly() = default;
  PhasePoly(long c) : PhasePoly(Coeff(c)) {}
  PhasePoly(const Coeff& c) { add_term({0, 0}, c); }
  PhasePoly(Powers pw, const Coeff& c) { add_term(pw, c); }

  static PhasePoly q(int power = 1) { return PhasePoly({power, 0}, Coeff(1)); }
  static PhasePoly p(int power = 1) { return PhasePoly({0, power}, Coeff(1)); }
  static PhasePoly monomial(int m, int n, const Coeff& c = Coeff(1)) {
    return PhasePoly({m, n}, c);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Coeff constant_term() const;

  int degree_q() const;
  int degree_p() const;
  int total_degree() const;
  bool depends_on_q() const { return degree_q() > 0; }
  bool depends_on_p() const { return degree_p() > 0; }

  PhasePoly d_q(int order = 1) const;
  PhasePoly d_p(int order = 1) const;
  PhasePoly pow(int e) const;

  /// Antiderivative in q (zero integration constant).
  PhasePoly integrate_q() const;

  /// Substitutes q -> new_q and p -> new_p (pointwise composition).
  PhasePoly compose(const PhasePoly& new_q, const PhasePoly& new_p) const;
  /// Applies a coefficient-level substitution of a formal symbol.
  PhasePoly substitute_symbol(const std::string& name, const Coeff& value) const;
  PhasePoly truncate(const std::string& name, int max_deg) const;
  PhasePoly coefficient_of(const std::string& name, int deg) const;
  PhasePoly map_coeffs(Coeff (*fn)(const Coeff&)) const;

  std::complex<double> evaluate(std::complex<double> qv, std::complex<double> pv,
                                const std::map<std::string, std::complex<double>>& params) const;

  PhasePoly& operator+=(const PhasePoly& o);
  PhasePoly& operator-=(const PhasePoly& o);
  PhasePoly& operator*=(const Coeff& c);

  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  /// Pointwise (commutative) product.
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  friend PhasePoly operator*(PhasePoly a, const Coeff& c) { return a *= c; }
  friend PhasePoly operator*(const Coeff& c, PhasePoly a) { return a *= c; }
  PhasePoly operator-() const;

  friend bool operator==(const PhasePoly& a, const PhasePoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PhasePoly& a, const PhasePoly& b) { return !(a == b); }

  void add_term(Powers pw, const Coeff& c);

 private:
  Terms terms_;
};

}  // namespace psq
