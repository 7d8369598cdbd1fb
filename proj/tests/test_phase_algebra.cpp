#include <gtest/gtest.h>

#include "gen.hpp"
#include "psq/error.hpp"
#include "psq/expr.hpp"
#include "psq/format.hpp"
#include "psq/star.hpp"

using namespace psq;

namespace {

PhasePoly P(const std::string& s) { return lower_poly(parse_expr(s), {}); }

const PhasePoly q = PhasePoly::q();
const PhasePoly p = PhasePoly::p();
const Coeff hb = Coeff::hbar();

PhasePoly conj_poly(const PhasePoly& f) {
  return f.map_coeffs([](const Coeff& c) { return c.conj(); });
}

}  // namespace

TEST(Coeff, LaurentUnits) {
  EXPECT_EQ(Coeff::hbar(-1) * Coeff::hbar(), Coeff(1));
  const Coeff c = Coeff::symbol("a", 2) * Coeff::hbar(-3) * Coeff(GaussRat(mpq_class(2, 3), 1));
  EXPECT_EQ(c * c.inverse(), Coeff(1));
  EXPECT_THROW((Coeff(1) + Coeff::hbar()).inverse(), Error);
}

TEST(Coeff, SubstituteAndTruncate) {
  const Coeff c = Coeff::hbar(2) + Coeff::symbol("a") * Coeff::hbar(-1);
  EXPECT_EQ(c.substitute("a", Coeff(2)), Coeff::hbar(2) + Coeff(2) * Coeff::hbar(-1));
  EXPECT_EQ(c.truncate(kHbar, 0), Coeff::symbol("a") * Coeff::hbar(-1));
  EXPECT_EQ(c.coefficient_of(kHbar, 2), Coeff(1));
  EXPECT_EQ(c.max_degree(kHbar), 2);
  EXPECT_EQ(c.min_degree(kHbar), -1);
}

TEST(Coeff, Evaluate) {
  const Coeff c = Coeff::i() * Coeff::hbar() + Coeff::rational(1, 2);
  const auto v = c.evaluate({{kHbar, 2.0}});
  EXPECT_DOUBLE_EQ(v.real(), 0.5);
  EXPECT_DOUBLE_EQ(v.imag(), 2.0);
}

TEST(Format, CanonicalStrings) {
  EXPECT_EQ(to_string(star(p, q)), "q*p - (1/2)*i*hbar");
  EXPECT_EQ(to_string(moyal_bracket(q, p)), "i*hbar");
  EXPECT_EQ(to_string(star(q.pow(2), p.pow(2))), "q^2*p^2 + 2*i*hbar*q*p - (1/2)*hbar^2");
  EXPECT_EQ(to_string(PhasePoly()), "0");
  EXPECT_EQ(to_string(ExpPoly::exp(PhasePoly(Coeff::i() * Coeff::hbar(-1)) * (q.pow(2) + p.pow(2)))),
            "exp(i*hbar^-1*q^2 + i*hbar^-1*p^2)");
}

TEST(Star, CanonicalPair) {
  EXPECT_EQ(star(p, q), q * p - PhasePoly(Coeff::i() * hb * Coeff::rational(1, 2)));
  EXPECT_EQ(star(q, p), q * p + PhasePoly(Coeff::i() * hb * Coeff::rational(1, 2)));
  EXPECT_EQ(moyal_bracket(q, p), PhasePoly(Coeff::i() * hb));
}

// Values from an independent Bopp-shift implementation in sympy.
TEST(Star, OracleTable) {
  struct Case {
    const char *a, *b, *expected;
  };
  const Case cases[] = {
      {"p", "q", "-i*hbar/2 + p*q"},
      {"q^2", "p^2", "-hbar^2/2 + 2*i*hbar*p*q + p^2*q^2"},
      {"q*p", "q*p", "hbar^2/4 + p^2*q^2"},
      {"q^3", "p^3", "-3*i*hbar^3/4 - 9*hbar^2*p*q/2 + 9*i*hbar*p^2*q^2/2 + p^3*q^3"},
      {"p^3", "q^3", "3*i*hbar^3/4 - 9*hbar^2*p*q/2 - 9*i*hbar*p^2*q^2/2 + p^3*q^3"},
      {"q^2*p", "q*p^2", "i*hbar^3/4 + hbar^2*p*q/2 + 3*i*hbar*p^2*q^2/2 + p^3*q^3"},
      {"q^3*p^2", "q^2*p^3",
       "3*i*hbar^5/8 + 3*hbar^4*p*q/4 + 6*i*hbar^3*p^2*q^2 + 4*hbar^2*p^3*q^3 + "
       "5*i*hbar*p^4*q^4/2 + p^5*q^5"},
      {"p^4", "q^4",
       "3*hbar^4/2 + 12*i*hbar^3*p*q - 18*hbar^2*p^2*q^2 - 8*i*hbar*p^3*q^3 + p^4*q^4"},
      {"q+p^2", "q^2+p", "-hbar^2/2 - 2*i*hbar*p*q + i*hbar/2 + p^3 + p^2*q^2 + p*q + q^3"},
  };
  for (const auto& c : cases) EXPECT_EQ(star(P(c.a), P(c.b)), P(c.expected)) << c.a << " * " << c.b;
}

TEST(Star, ExpPolyMixed) {
  const ExpPoly e = ExpPoly::exp(PhasePoly(Coeff::i() * Coeff::hbar(-1)) * (q.pow(2) + p.pow(2)));
  EXPECT_EQ(star(e, q), ExpPoly(q + p, e.phase()));
  EXPECT_EQ(star(q, e), ExpPoly(q - p, e.phase()));
  EXPECT_THROW(star(PhaseFn(e), PhaseFn(e)), Error);
}

TEST(Star, InverseSeries) {
  const PhasePoly f = PhasePoly(1) + q * p;
  const PhasePoly n = -(q * p);
  for (int order : {0, 1, 3}) {
    PhasePoly nk(1);
    for (int k = 0; k <= order; ++k) nk = star(nk, n);
    EXPECT_EQ(star(f, star_inverse_series(f, order)), PhasePoly(1) - nk);
  }
  EXPECT_THROW(star_inverse_series(q, 2), Error);
}

TEST(Star, ExponentialTerms) {
  const auto terms = star_exponential(q, Coeff::symbol("a"), 4);
  ASSERT_EQ(terms.size(), 5u);
  EXPECT_EQ(terms[3], q.pow(3) * (Coeff::symbol("a", 3) * Coeff::rational(1, 6)));
  EXPECT_EQ(sum_series(terms), terms[0] + terms[1] + terms[2] + terms[3] + terms[4]);
}

TEST(Star, Truncation) {
  const PhasePoly f = q.pow(3), g = p.pow(3);
  const PhasePoly t = star(f, g, Truncation{kHbar, 1});
  EXPECT_EQ(t, star(f, g).truncate(kHbar, 1));
}

TEST(Star, OperatorsMatchProducts) {
  proptest::Gen gen(7);
  for (int k = 0; k < 40; ++k) {
    const PhasePoly f = gen.poly(3, 3), g = gen.poly(4, 3);
    EXPECT_EQ(apply_diffop(star_left_operator(f), g), star(f, g));
    EXPECT_EQ(apply_diffop(star_right_operator(g), f), star(f, g));
    EXPECT_EQ(apply_diffop(lie_operator_of(f), g), moyal_bracket(f, g));
  }
}

TEST(StarProperty, Associativity) {
  proptest::Gen gen(11);
  for (int k = 0; k < 60; ++k) {
    const PhasePoly f = gen.poly(6, 3, true), g = gen.poly(6, 3, true), h = gen.poly(6, 3, true);
    ASSERT_EQ(star(star(f, g), h), star(f, star(g, h)));
  }
}

TEST(StarProperty, UnitBilinearityConjugation) {
  proptest::Gen gen(12);
  for (int k = 0; k < 100; ++k) {
    const PhasePoly f = gen.poly(5, 4), g = gen.poly(5, 4), h = gen.poly(5, 4);
    const Coeff c = gen.coeff();
    EXPECT_EQ(star(PhasePoly(1), f), f);
    EXPECT_EQ(star(f, PhasePoly(1)), f);
    EXPECT_EQ(star(f + g * c, h), star(f, h) + star(g, h) * c);
    // conjugation reverses the product (hbar real)
    EXPECT_EQ(conj_poly(star(f, g)), star(conj_poly(g), conj_poly(f)));
  }
}

TEST(StarProperty, BracketJacobiAntisymmetry) {
  proptest::Gen gen(13);
  for (int k = 0; k < 40; ++k) {
    const PhasePoly f = gen.poly(4, 3), g = gen.poly(4, 3), h = gen.poly(4, 3);
    const PhasePoly jac = moyal_bracket(f, moyal_bracket(g, h)) +
                          moyal_bracket(g, moyal_bracket(h, f)) +
                          moyal_bracket(h, moyal_bracket(f, g));
    EXPECT_TRUE(jac.is_zero());
    EXPECT_EQ(moyal_bracket(f, g), -moyal_bracket(g, f));
  }
}

TEST(StarProperty, ClassicalLimitOfBracket) {
  proptest::Gen gen(14);
  for (int k = 0; k < 40; ++k) {
    const PhasePoly f = gen.rational_poly(5, 4), g = gen.rational_poly(5, 4);
    const PhasePoly lead = (moyal_bracket(f, g) * (Coeff::i() * Coeff::hbar()).inverse())
                               .coefficient_of(kHbar, 0);
    EXPECT_EQ(lead, poisson_bracket(f, g));
  }
}

TEST(PhasePoly, CalculusAndComposition) {
  const PhasePoly f = q.pow(3) * p + q * p.pow(2);
  EXPECT_EQ(f.d_q(), PhasePoly(3) * q.pow(2) * p + p.pow(2));
  EXPECT_EQ(f.d_p(2), PhasePoly(2) * q);
  EXPECT_EQ(q.pow(2).integrate_q(), q.pow(3) * Coeff::rational(1, 3));
  EXPECT_EQ(f.compose(p, -q), -(p.pow(3) * q) + p * q.pow(2));
  EXPECT_EQ(f.total_degree(), 4);
  EXPECT_EQ(f.degree_p(), 2);
}

TEST(PhasePoly, ClassicalLimitRejectsNegativePowers) {
  EXPECT_EQ(classical_limit(star(q, p)), q * p);
  EXPECT_THROW(classical_limit(q * Coeff::hbar(-1)), Error);
}
