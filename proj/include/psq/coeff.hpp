#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace psq {

inline constexpr const char* kHbar = "hbar";

/// Exact complex rational re + i*im.
struct GaussRat {
  mpq_class re{0};
  mpq_class im{0};

  GaussRat() = default;
  GaussRat(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  GaussRat(long r) : re(r), im(0) {}

  static GaussRat i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }

  GaussRat conj() const { return {re, -im}; }
  GaussRat inverse() const;
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    return a * b.inverse();
  }
  GaussRat operator-() const { return {-re, -im}; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

/// Product of symbols raised to (possibly negative) integer powers. Kept
/// sorted with hbar first and no zero exponents.
class Monomial {
 public:
  using Factor = std::pair<std::string, int>;

  Monomial() = default;
  static Monomial symbol(const std::string& name, int power = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree_in(const std::string& name) const;
  bool has_negative_power() const;

  Monomial without(const std::string& name) const;
  Monomial inverse() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
};

/// Exact coefficient: a Laurent polynomial over Q(i) in hbar and any named
/// parameters. Canonical sparse form, no stored zero terms.
class Coeff {
 public:
  using Terms = std::map<Monomial, GaussRat>;

  Coeff() = default;
  Coeff(long v) { add_term(Monomial{}, GaussRat(v)); }
  Coeff(GaussRat v) { add_term(Monomial{}, std::move(v)); }
  Coeff(const Monomial& m, GaussRat v) { add_term(m, std::move(v)); }

  static Coeff i() { return Coeff(GaussRat::i()); }
  static Coeff hbar(int power = 1) { return Coeff(Monomial::symbol(kHbar, power), 1); }
  static Coeff symbol(const std::string& name, int power = 1) {
    return Coeff(Monomial::symbol(name, power), 1);
  }
  static Coeff rational(long num, long den) { return Coeff(GaussRat(mpq_class(num, den))); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the symbol-free monomial.
  GaussRat constant_term() const;
  bool is_single_term() const { return terms_.size() == 1; }
  bool has_negative_power(const std::string& name) const;

  int max_degree(const std::string& name) const;
  int min_degree(const std::string& name) const;

  /// Inverse of a single-term element (a unit of the Laurent ring).
  Coeff inverse() const;
  Coeff pow(int e) const;
  Coeff conj() const;

  /// Replaces every occurrence of `name` by `value`; negative powers require
  /// an invertible value.
  Coeff substitute(const std::string& name, const Coeff& value) const;
  /// Drops terms whose degree in `name` exceeds `max_deg`.
  Coeff truncate(const std::string& name, int max_deg) const;
  /// Keeps only the terms whose degree in `name` equals `deg`, with that
  /// factor removed.
  Coeff coefficient_of(const std::string& name, int deg) const;

  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& values) const;
  std::vector<std::string> symbols() const;

  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  Coeff& operator*=(const GaussRat& o);

  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend Coeff operator*(Coeff a, const GaussRat& b) { return a *= b; }
  Coeff operator-() const;

  friend bool operator==(const Coeff& a, const Coeff& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

  void add_term(const Monomial& m, const GaussRat& v);

 private:
  Terms terms_;
};

/// n!/(n-k)!, zero when k > n.
mpz_class falling_factorial(int n, int k);
mpz_class binomial(int n, int k);
mpz_class factorial(int n);

}  // namespace psq
