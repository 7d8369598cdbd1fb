#include <gtest/gtest.h>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>
#include <cmath>
#include <numbers>

#include "psq/airy.hpp"
#include "psq/closed_fn.hpp"
#include "psq/error.hpp"

using namespace psq;

TEST(Airy, MatchesBoostAcrossRegimes) {
  for (double x = -60.0; x <= 40.0; x += 0.173) {
    const double ref = boost::math::airy_ai(x);
    const double dref = boost::math::airy_ai_prime(x);
    // oscillatory side: absolute scale set by the envelope |x|^{-1/4}/sqrt(pi)
    const double scale = x < 0 ? std::pow(std::fabs(x), -0.25) / std::sqrt(std::numbers::pi)
                               : std::fabs(ref);
    const double dscale = x < 0 ? std::pow(std::fabs(x), 0.25) / std::sqrt(std::numbers::pi)
                                : std::fabs(dref);
    EXPECT_NEAR(airy(x), ref, 1e-12 * scale + 1e-300) << x;
    EXPECT_NEAR(airy_prime(x), dref, 1e-12 * dscale + 1e-300) << x;
  }
}

TEST(Airy, KnownValues) {
  EXPECT_NEAR(airy(0.0), 0.355028053887817239, 1e-16);
  EXPECT_NEAR(airy_prime(0.0), -0.258819403792806798, 1e-16);
  EXPECT_NEAR(airy(10.0) / 1.104753255289869e-10, 1.0, 1e-13);
}

TEST(Airy, SatisfiesAiryEquation) {
  // Ai'' = x Ai, with Ai'' from central differences of Ai'
  const double h = 1e-5;
  for (double x = -12.0; x <= 6.0; x += 0.37) {
    const double d2 = (airy_prime(x + h) - airy_prime(x - h)) / (2 * h);
    EXPECT_NEAR(d2, x * airy(x), 1e-8 * (1 + std::fabs(x))) << x;
  }
}

TEST(Airy, QuadratureAgrees) {
  // quadrature of both implementations over the same window
  auto f = [](double x) { return airy(x); };
  auto g = [](double x) { return boost::math::airy_ai(x); };
  const double a = boost::math::quadrature::trapezoidal(f, -20.0, 30.0, 1e-12);
  const double b = boost::math::quadrature::trapezoidal(g, -20.0, 30.0, 1e-12);
  EXPECT_NEAR(a, b, 1e-10);
}

TEST(Airy, RangeChecked) {
  EXPECT_THROW(airy(2000.0), Error);
  EXPECT_THROW(airy_prime(-kAiryMaxArg - 1), Error);
  EXPECT_THROW(airy(std::nan("")), Error);
}

TEST(ClosedFn, EvaluateAndDifferentiate) {
  const ClosedFn q = ClosedFn::q(), p = ClosedFn::p();
  const ClosedFn f = exp(q * p) / (ClosedFn(1.0) + q * q) + sqrt(q) * log(q);
  const ClosedFn dq = f.d_q();
  const double h = 1e-6;
  for (double x : {0.3, 0.9, 1.7}) {
    const cplx fd = (f(x + h, 0.4) - f(x - h, 0.4)) / (2 * h);
    EXPECT_NEAR(std::abs(dq(x, 0.4) - fd), 0.0, 1e-7);
  }
  EXPECT_TRUE(f.depends_on(Var::P));
  EXPECT_FALSE(log(q).depends_on(Var::P));
  EXPECT_EQ((ClosedFn(2.0) * ClosedFn(3.0)).constant_value().value(), cplx(6.0));
}

TEST(ClosedFn, AiryNode) {
  const ClosedFn a = ClosedFn::apply(ClosedFn::Func::Airy, ClosedFn::q());
  EXPECT_NEAR(a(1.5).real(), boost::math::airy_ai(1.5), 1e-15);
  EXPECT_NEAR(a.d_q()(1.5).real(), boost::math::airy_ai_prime(1.5), 1e-15);
  EXPECT_THROW(a(cplx(1.0, 0.5)), Error);
}

TEST(ClosedFn, FromPoly) {
  const PhasePoly f = PhasePoly::q(2) * Coeff::symbol("a") + PhasePoly::p() * Coeff::hbar();
  const ClosedFn c = ClosedFn::from_poly(f, {{"a", 3.0}, {kHbar, 0.5}});
  EXPECT_NEAR(std::abs(c(2.0, 4.0) - cplx(14.0)), 0.0, 1e-14);
}
