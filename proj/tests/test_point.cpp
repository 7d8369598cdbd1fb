#include <gtest/gtest.h>

#include <cmath>

#include "psq/ct.hpp"
#include "psq/error.hpp"

using namespace psq;

namespace {

const ClosedFn q = ClosedFn::q();

std::vector<double> samples(double a, double b, int n) {
  std::vector<double> xs(n);
  for (int k = 0; k < n; ++k) xs[k] = a + (b - a) * (k + 1) / (n + 1);
  return xs;
}

}  // namespace

TEST(PointInverse, ReciprocalClosedForm) {
  const double m = 0.5;
  const auto xs = samples(0.1, 0.9, 16);
  const auto plus = point_ct_inverse(ClosedFn(1.0) / q, m, xs);
  InverseOptions minus_opts;
  minus_opts.branch = Branch::Minus;
  const auto minus = point_ct_inverse(ClosedFn(1.0) / q, m, xs, minus_opts);
  for (size_t k = 0; k < xs.size(); ++k) {
    const cplx expected(0.0, 2.0 / m * std::sqrt(1 - xs[k] * xs[k]));
    EXPECT_LT(std::abs(plus[k].f - expected), 1e-10);
    EXPECT_LT(std::abs(minus[k].f + expected), 1e-10);
    EXPECT_LT(plus[k].residual, 1e-10);
  }
}

TEST(PointInverse, GaugeFromF) {
  // chi = 0 data for Q = 1/q: g = -(1/(2 lambda)) ln(q^2 - 1) up to a constant
  const double m = 0.5, hbar = 1.0;
  const cplx lambda = m / (cplx(0, 1) * hbar);
  const auto xs = samples(0.1, 0.9, 16);
  const ClosedFn f = cplx(0, 2.0 / m) * sqrt(ClosedFn(1.0) - q * q);
  const auto g = point_g_from_f(f, m, xs, hbar);
  for (size_t k = 0; k < xs.size(); ++k) {
    const cplx ref = -(std::log(1 - xs[k] * xs[k]) - std::log(1 - xs[0] * xs[0])) / (2.0 * lambda);
    EXPECT_LT(std::abs(g[k] - ref), 1e-9) << xs[k];
  }
}

TEST(PointInverse, NumericCases) {
  const auto xs = samples(0.1, 0.9, 16);
  for (const ClosedFn& Q : {log(q), exp(q)}) {
    for (const auto& s : point_ct_inverse(Q, 0.5, xs)) {
      EXPECT_LT(s.residual, 1e-10) << Q.to_string() << " at " << s.q;
      // the implicit equation itself
      const cplx up = s.q + 0.5 * s.f / 2.0;
      EXPECT_LT(std::abs(Q(up) - (s.q - 0.5 * s.f / 2.0)), 1e-10);
    }
  }
}

TEST(PointForward, SampleConsistency) {
  const ClosedFn f = q * q, g = ClosedFn(0.3) * q;
  const cplx m = 0.2;
  const auto xs = samples(0.2, 1.0, 8);
  const PointCT ct = point_ct_forward(f, g, m, xs);
  for (double x : xs) {
    const PointSample s = ct.at_parameter(x);
    EXPECT_NEAR(std::abs(s.upsilon - (x + m * x * x / 2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.Q - (x - m * x * x / 2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.Qtilde - (2.0 + m * 2.0 * x) / (2.0 - m * 2.0 * x)), 0.0, 1e-14);
    const PointSample back = ct.at(s.upsilon);
    EXPECT_NEAR(std::abs(back.q - x), 0.0, 1e-12);
  }
  EXPECT_LT(point_canonicity_residual(ct, xs), 1e-8);
}

TEST(PointForward, SingularDenominator) {
  try {
    point_ct_forward(q, ClosedFn(0.0), 2.0, {0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularDenominator);
  }
}

TEST(PointForward, CaseFourPredicate) {
  const auto xs = samples(0.1, 0.9, 8);
  EXPECT_TRUE(point_case_iv_predicate(ClosedFn(3.0) * q, 0.4, xs));
  EXPECT_FALSE(point_case_iv_predicate(q * q, 0.4, xs));
}

TEST(PointFlow, QuadraticFlowClosedForm) {
  const cplx m = 0.3;
  for (double q0 : {0.2, 0.7, 1.5}) {
    const cplx got = flow_A(q * q, m, q0);
    EXPECT_LT(std::abs(got - q0 / (1.0 + m * q0)), 1e-11);
  }
  try {
    flow_A(q * q, -1.0, 2.0);  // q0 / (1 - 2 t) blows up at t = 1/2
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FlowEscape);
  }
}

TEST(PointFlow, ConstantFieldAgreesWithForward) {
  // for constant f the flow and the forward map coincide: Q = q - m f
  const cplx m = 0.4;
  const ClosedFn f(1.5);
  const PointCT ct(f, ClosedFn(0.0), m);
  for (double x : {0.0, 0.5, 2.0}) EXPECT_LT(std::abs(flow_A(f, m, x) - ct.Q(x)), 1e-11);
}
