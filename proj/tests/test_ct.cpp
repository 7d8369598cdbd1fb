#include <gtest/gtest.h>

#include "gen.hpp"
#include "psq/ct.hpp"
#include "psq/error.hpp"
#include "psq/format.hpp"

using namespace psq;

namespace {

const PhasePoly q = PhasePoly::q();
const PhasePoly p = PhasePoly::p();
const Coeff ih = Coeff::i() * Coeff::hbar();

bool zero_pair(const std::pair<ExpPoly, ExpPoly>& r) {
  return r.first.is_zero() && r.second.is_zero();
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(GaugeCT, GeneratingRelation) {
  const Coeff lambda = Coeff::symbol("l");
  for (int k = 1; k <= 3; ++k) {
    const PhasePoly f = q.pow(k);
    const GeneratingFn F = GaugeGF{f, lambda};
    const CanonicalPair ct = gauge_ct(f, lambda);
    EXPECT_TRUE(zero_pair(verify_gf_relation(gf_exp_poly(F), ct.Q, ct.P))) << k;
    EXPECT_TRUE(is_canonical(ct));
  }
  EXPECT_EQ(code_of([] { gauge_ct(q * p, Coeff(1)); }), ErrorCode::NotFunctionOfQ);
}

TEST(GaugeCT, FromMomentumShift) {
  const PhasePoly u = q.pow(3) * Coeff::rational(2, 3) - q;
  EXPECT_TRUE(zero_pair(verify_gf_relation(gauge_gf_from_ct(u), q, p + u)));
}

TEST(InterchangeCT, GeneratingRelation) {
  const ExpPoly F = gf_exp_poly(InterchangeGF{});
  EXPECT_EQ(to_string(F), "exp(i*hbar^-1*q^2 + i*hbar^-1*p^2)");
  EXPECT_TRUE(zero_pair(verify_gf_relation(F, p, -q)));
  EXPECT_FALSE(zero_pair(verify_gf_relation(F, p, q)));
}

TEST(CubicCT, GeneratingRelation) {
  const Coeff nu = Coeff::symbol("nu");
  const ExpPoly F = gf_exp_poly(CubicGaugeGF{nu});
  EXPECT_EQ(F.phase(), q.pow(3) * (Coeff::i() * Coeff::hbar(-1) * nu * Coeff::rational(-1, 3)));
  EXPECT_TRUE(zero_pair(verify_gf_relation(F, q, p + q.pow(2) * nu)));
  // the cubic of the new momentum picks up a quantum correction
  const PhasePoly image = gauge_transform_known_ct(CubicGaugeGF{nu}, p.pow(3));
  const PhasePoly shifted = (p + q.pow(2) * nu).pow(3);
  EXPECT_EQ(image, shifted - PhasePoly(nu * Coeff::hbar(2) * Coeff::rational(1, 2)));
}

TEST(LinearCT, AllSmallIntegerMatrices) {
  int checked = 0;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c)
        for (long d = -3; d <= 3; ++d) {
          if (a * d - b * c != 1 || a + d + 2 == 0) continue;
          const LinearCT L{a, b, c, d};
          const CanonicalPair ct = linear_pair(L);
          ASSERT_TRUE(zero_pair(verify_gf_relation(linear_gf(L), ct.Q, ct.P)))
              << a << " " << b << " " << c << " " << d;
          ++checked;
        }
  EXPECT_EQ(checked, 95);
}

TEST(LinearCT, Errors) {
  EXPECT_EQ(code_of([] { require_symplectic(LinearCT{1, 1, 1, 1}); }), ErrorCode::NotSymplectic);
  EXPECT_EQ(code_of([] { linear_gf(LinearCT{-1, 0, 0, -1}); }), ErrorCode::SingularCayley);
  EXPECT_EQ(code_of([] { linear_decompose(LinearCT::interchange()); }),
            ErrorCode::DegenerateDecomposition);
}

TEST(LinearCT, GroupAction) {
  proptest::Gen gen(31);
  for (int k = 0; k < 50; ++k) {
    const LinearCT L1 = gen.symplectic(), L2 = gen.symplectic();
    const PhasePoly u = gen.poly(5, 4);
    EXPECT_EQ(linear_act(L1, linear_act(L2, u)), linear_act(L2 * L1, u));
  }
}

TEST(LinearCT, DecompositionReproducesMatrix) {
  proptest::Gen gen(32);
  for (int k = 0; k < 40; ++k) {
    const LinearCT L = gen.symplectic(4);
    if (L.d.is_zero()) continue;
    const auto fac = decomposition_factors(linear_decompose(L));
    for (const PhasePoly& u : {q, p, gen.poly(4, 3)})
      EXPECT_EQ(linear_act(fac.scaling, linear_act(fac.gauge_q, linear_act(fac.gauge_p, u))),
                linear_act(L, u));
  }
  const LinearDecomposition dec = linear_decompose(LinearCT{2, 3, 1, 2});
  EXPECT_EQ(dec.k, Coeff::rational(1, 2));
  EXPECT_EQ(dec.alpha, Coeff::i() * Coeff::hbar(-1) * Coeff::rational(3, 4));
  EXPECT_EQ(dec.beta, -Coeff::i() * Coeff::hbar(-1));
}

TEST(KnownCT, ActionMatchesExponentialLayer) {
  // F*u == T(u)*F with T the exact conjugation, for every known generator
  proptest::Gen gen(33);
  const std::vector<GeneratingFn> gfs = {
      GaugeGF{q.pow(2), Coeff::symbol("l")}, GaugeGF{q.pow(3) - q, Coeff::rational(1, 3)},
      InterchangeGF{},                       CubicGaugeGF{Coeff::symbol("nu")},
      LinearGF{LinearCT{2, 1, 1, 1}},        LinearGF{LinearCT{1, 0, -2, 1}},
  };
  for (const auto& F : gfs) {
    const ExpPoly e = gf_exp_poly(F);
    for (int k = 0; k < 8; ++k) {
      const PhasePoly u = gen.poly(4, 3);
      const PhasePoly image = gauge_transform_known_ct(F, u);
      EXPECT_EQ(star(e, u), star(image, e)) << to_string(e) << " on " << to_string(u);
    }
  }
  EXPECT_EQ(code_of([] { gauge_transform_known_ct(ExplicitGF{ExpPoly::exp(q * p)}, q); }),
            ErrorCode::UnsupportedVariant);
}

TEST(KnownCT, InterchangeConsistency) {
  proptest::Gen gen(34);
  for (int d = 0; d <= 6; ++d) {
    for (int k = 0; k < 5; ++k) {
      PhasePoly u = gen.poly(d, 4);
      EXPECT_EQ(gauge_transform_known_ct(InterchangeGF{}, u), u.compose(p, -q));
      EXPECT_EQ(gauge_transform_known_ct(LinearGF{LinearCT::interchange()}, u),
                gauge_transform_known_ct(InterchangeGF{}, u));
    }
  }
}

TEST(KnownCT, ScalingSeriesThroughOrder20) {
  const Coeff mu = Coeff::symbol("mu");
  const auto terms = lie_conjugate(star(q, p), q, mu, 20);
  ASSERT_EQ(terms.size(), 21u);
  Coeff c(1);
  for (int k = 0; k <= 20; ++k) {
    if (k > 0) c = c * (-Coeff::i()) * Coeff::hbar() * mu * GaussRat(mpq_class(1, k));
    EXPECT_EQ(terms[k], q * c) << k;
  }
}

TEST(KnownCT, CanonicityProperty) {
  proptest::Gen gen(35);
  for (int trial = 0; trial < 30; ++trial) {
    CanonicalPair ct{q, p};
    for (int step = 0; step < 3; ++step) {
      GeneratingFn F;
      switch (gen.uniform(0, 2)) {
        case 0: F = GaugeGF{gen.poly_in_q(3), Coeff(gen.gauss_rat())}; break;
        case 1: F = LinearGF{gen.symplectic()}; break;
        default: F = CubicGaugeGF{Coeff(gen.gauss_rat())}; break;
      }
      ct = {gauge_transform_known_ct(F, ct.Q), gauge_transform_known_ct(F, ct.P)};
    }
    ASSERT_EQ(moyal_bracket(ct.Q, ct.P), PhasePoly(ih));
    ASSERT_TRUE(canonicity_residual(ct).is_zero());
  }
  EXPECT_FALSE(is_canonical({q.pow(2), p}));
}

TEST(DefnAlt, OneVariablePhase) {
  const Coeff l = Coeff::symbol("l");
  const CanonicalPair ct = ct_from_gf_defnalt(gf_exp_poly(GaugeGF{q.pow(3), l}));
  EXPECT_EQ(ct.Q, q);
  EXPECT_EQ(ct.P, gauge_ct(q.pow(3), l).P);
  EXPECT_EQ(code_of([] { ct_from_gf_defnalt(gf_exp_poly(InterchangeGF{})); }),
            ErrorCode::MixedPhase);
}
