#include "psq/coeff.hpp"

#include <algorithm>
#include <set>

#include "psq/error.hpp"

namespace psq {

namespace {

// hbar sorts before every other symbol.
bool symbol_less(const std::string& a, const std::string& b) {
  const bool ah = a == kHbar;
  const bool bh = b == kHbar;
  if (ah != bh) return ah;
  return a < b;
}

}  // namespace

GaussRat GaussRat::inverse() const {
  if (is_zero()) throw Error(ErrorCode::NonInvertible, "division by zero");
  mpq_class n = re * re + im * im;
  return {re / n, -im / n};
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (im == 0 && o.im == 0) {
    re *= o.re;
    return *this;
  }
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Monomial Monomial::symbol(const std::string& name, int power) {
  Monomial m;
  if (power != 0) m.factors_.emplace_back(name, power);
  return m;
}

int Monomial::degree_in(const std::string& name) const {
  for (const auto& [s, e] : factors_)
    if (s == name) return e;
  return 0;
}

bool Monomial::has_negative_power() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return f.second < 0; });
}

Monomial Monomial::without(const std::string& name) const {
  Monomial m;
  for (const auto& f : factors_)
    if (f.first != name) m.factors_.push_back(f);
  return m;
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& f : m.factors_) f.second = -f.second;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && symbol_less(i->first, j->first))) {
      r.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || symbol_less(j->first, i->first)) {
      r.factors_.push_back(*j++);
    } else {
      int e = i->second + j->second;
      if (e != 0) r.factors_.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
  const auto& x = a.factors_;
  const auto& y = b.factors_;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k].first != y[k].first) return symbol_less(x[k].first, y[k].first);
    if (x[k].second != y[k].second) return x[k].second < y[k].second;
  }
  return x.size() < y.size();
}

void Coeff::add_term(const Monomial& m, const GaussRat& v) {
  if (v.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Coeff::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

GaussRat Coeff::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? GaussRat{} : it->second;
}

bool Coeff::has_negative_power(const std::string& name) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.degree_in(name) < 0; });
}

int Coeff::max_degree(const std::string& name) const {
  int d = 0;
  bool first = true;
  for (const auto& [m, v] : terms_) {
    int e = m.degree_in(name);
    if (first || e > d) d = e;
    first = false;
  }
  return d;
}

int Coeff::min_degree(const std::string& name) const {
  int d = 0;
  bool first = true;
  for (const auto& [m, v] : terms_) {
    int e = m.degree_in(name);
    if (first || e < d) d = e;
    first = false;
  }
  return d;
}

Coeff Coeff::inverse() const {
  if (terms_.empty()) throw Error(ErrorCode::NonInvertible, "division by zero");
  if (terms_.size() != 1)
    throw Error(ErrorCode::NonInvertible, "only single-term coefficients are invertible");
  const auto& [m, v] = *terms_.begin();
  return Coeff(m.inverse(), v.inverse());
}

Coeff Coeff::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Coeff result(1);
  Coeff base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Coeff Coeff::conj() const {
  Coeff r;
  for (const auto& [m, v] : terms_) r.add_term(m, v.conj());
  return r;
}

Coeff Coeff::substitute(const std::string& name, const Coeff& value) const {
  Coeff r;
  std::map<int, Coeff> powers;
  for (const auto& [m, v] : terms_) {
    int e = m.degree_in(name);
    if (e == 0) {
      r.add_term(m, v);
      continue;
    }
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, value.pow(e)).first;
    r += Coeff(m.without(name), v) * it->second;
  }
  return r;
}

Coeff Coeff::truncate(const std::string& name, int max_deg) const {
  Coeff r;
  for (const auto& [m, v] : terms_)
    if (m.degree_in(name) <= max_deg) r.terms_.emplace(m, v);
  return r;
}

Coeff Coeff::coefficient_of(const std::string& name, int deg) const {
  Coeff r;
  for (const auto& [m, v] : terms_)
    if (m.degree_in(name) == deg) r.add_term(m.without(name), v);
  return r;
}

std::complex<double> Coeff::evaluate(
    const std::map<std::string, std::complex<double>>& values) const {
  std::complex<double> sum = 0.0;
  for (const auto& [m, v] : terms_) {
    std::complex<double> t = v.to_complex();
    for (const auto& [s, e] : m.factors()) {
      auto it = values.find(s);
      if (it == values.end())
        throw Error(ErrorCode::UnknownSymbol, "no numeric value for symbol '" + s + "'");
      t *= std::pow(it->second, e);
    }
    sum += t;
  }
  return sum;
}

std::vector<std::string> Coeff::symbols() const {
  std::set<std::string> names;
  for (const auto& [m, v] : terms_)
    for (const auto& f : m.factors()) names.insert(f.first);
  return {names.begin(), names.end()};
}

Coeff& Coeff::operator+=(const Coeff& o) {
  for (const auto& [m, v] : o.terms_) add_term(m, v);
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  for (const auto& [m, v] : o.terms_) add_term(m, -v);
  return *this;
}

Coeff operator*(const Coeff& a, const Coeff& b) {
  Coeff r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (b.terms_.size() == 1 && b.terms_.begin()->first.is_one()) {
    return a * b.terms_.begin()->second;
  }
  if (a.terms_.size() == 1 && a.terms_.begin()->first.is_one()) {
    return b * a.terms_.begin()->second;
  }
  for (const auto& [ma, va] : a.terms_)
    for (const auto& [mb, vb] : b.terms_) r.add_term(ma * mb, va * vb);
  return r;
}

Coeff& Coeff::operator*=(const Coeff& o) {
  *this = *this * o;
  return *this;
}

Coeff& Coeff::operator*=(const GaussRat& o) {
  if (o.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= o;
  return *this;
}

Coeff Coeff::operator-() const {
  Coeff r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

mpz_class falling_factorial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r = 1;
  for (int j = 0; j < k; ++j) r *= n - j;
  return r;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace psq
