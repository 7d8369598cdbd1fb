#include "psq/airy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "psq/error.hpp"

namespace psq {
namespace {

constexpr long double kC1 = 0.355028053887817239260063186004183176L;  // Ai(0)
constexpr long double kC2 = 0.258819403792806798405183560189203963L;  // -Ai'(0)
constexpr double kSeriesLimit = 8.0;
// Above this the Maclaurin sums cancel badly; K_{1/3}, K_{2/3} keep full
// relative accuracy on the decaying side.
constexpr double kBesselSwitch = 2.0;

struct Pair {
  long double f, g;
};

// f = sum 3^k (1/3)_k x^{3k}/(3k)!,  g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
// Ai = c1 f - c2 g.
Pair series(long double x) {
  const long double x3 = x * x * x;
  long double tf = 1.0L, tg = x;
  long double f = tf, g = tg;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / ((3.0L * k - 1) * (3.0L * k));
    tg *= x3 / ((3.0L * k) * (3.0L * k + 1));
    f += tf;
    g += tg;
    if (std::fabs(tf) + std::fabs(tg) < 1e-22L * (std::fabs(f) + std::fabs(g))) break;
  }
  return {f, g};
}

// derivatives of the two series: f' = sum x^{3k-1}/(3k-1)! * ..., via term-wise differentiation
Pair series_prime(long double x) {
  const long double x3 = x * x * x;
  // f' = x^2/2 + x^5/(2*3*5) + ... ; g' = 1 + x^3/3 + ...
  long double tf = x * x / 2.0L, tg = 1.0L;
  long double f = tf, g = tg;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / ((3.0L * k + 2) * (3.0L * k));
    tg *= x3 / ((3.0L * k) * (3.0L * k - 2));
    f += tf;
    g += tg;
    if (std::fabs(tf) + std::fabs(tg) < 1e-22L * (std::fabs(f) + std::fabs(g) + 1e-300L)) break;
  }
  return {f, g};
}

// Oscillatory asymptotic sums for Ai(-z), Ai'(-z), optimally truncated.
struct Sums {
  double even_u, odd_u, even_v, odd_v;
};

Sums asymptotic_sums(double zeta) {
  Sums s{0, 0, 0, 0};
  double u = 1.0;
  double prev = INFINITY;
  double zpow = 1.0;
  for (int k = 0; k < 80; ++k) {
    if (k > 0) {
      u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
      zpow *= zeta;
    }
    const double v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
    const double tu = u / zpow;
    const double tv = v / zpow;
    if (std::fabs(tu) > prev || std::fabs(tu) < 1e-18) break;
    prev = std::fabs(tu);
    const double sign_osc = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      s.even_u += sign_osc * tu;
      s.even_v += sign_osc * tv;
    } else {
      s.odd_u += sign_osc * tu;
      s.odd_v += sign_osc * tv;
    }
  }
  return s;
}

void check_range(double x) {
  if (!std::isfinite(x) || std::fabs(x) > kAiryMaxArg)
    throw Error(ErrorCode::OutOfRange, "airy argument out of range: " + std::to_string(x));
}

}  // namespace

double airy(double x) {
  check_range(x);
  if (x > kBesselSwitch) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    return std::sqrt(x / 3.0) / std::numbers::pi * std::cyl_bessel_k(1.0 / 3.0, zeta);
  }
  if (std::fabs(x) <= kSeriesLimit) {
    const Pair s = series(x);
    return static_cast<double>(kC1 * s.f - kC2 * s.g);
  }
  const double z = std::fabs(x);
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const Sums s = asymptotic_sums(zeta);
  const double sqpi = std::sqrt(std::numbers::pi);
  const double th = zeta - std::numbers::pi / 4;
  return (std::cos(th) * s.even_u + std::sin(th) * s.odd_u) / (sqpi * std::pow(z, 0.25));
}

double airy_prime(double x) {
  check_range(x);
  if (x > kBesselSwitch) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    return -x / (std::numbers::pi * std::sqrt(3.0)) * std::cyl_bessel_k(2.0 / 3.0, zeta);
  }
  if (std::fabs(x) <= kSeriesLimit) {
    const Pair s = series_prime(x);
    return static_cast<double>(kC1 * s.f - kC2 * s.g);
  }
  const double z = std::fabs(x);
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const Sums s = asymptotic_sums(zeta);
  const double sqpi = std::sqrt(std::numbers::pi);
  const double th = zeta - std::numbers::pi / 4;
  return std::pow(z, 0.25) * (std::sin(th) * s.even_v - std::cos(th) * s.odd_v) / sqpi;
}

}  // namespace psq
