#include <type_traits>

#include "psq/ct.hpp"
#include "psq/error.hpp"

namespace psq {
namespace {

Coeff i_hbar() { return Coeff::i() * Coeff::hbar(); }

void require_function_of_q(const PhasePoly& f, const char* what) {
  if (f.depends_on_p()) throw Error(ErrorCode::NotFunctionOfQ, std::string(what) + " must depend on q only");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Coeff cubic_lambda(const Coeff& nu) {
  return Coeff(GaussRat(0, mpq_class(-1, 3))) * nu * Coeff::hbar(-1);
}

PhasePoly gauge_action(const PhasePoly& f, const Coeff& lambda, const PhasePoly& u) {
  require_function_of_q(f, "gauge function");
  // each application of the Lie operator lowers the p-degree, so this is exact
  return sum_series(lie_conjugate(f, u, lambda, u.degree_p()));
}

}  // namespace

CanonicalPair gauge_ct(const PhasePoly& f, const Coeff& lambda) {
  require_function_of_q(f, "gauge function");
  return {PhasePoly::q(), PhasePoly::p() + f.d_q() * (i_hbar() * lambda)};
}

ExpPoly gauge_gf_from_ct(const PhasePoly& u) {
  require_function_of_q(u, "gauge momentum shift");
  return ExpPoly::exp(u.integrate_q() * (-Coeff::i() * Coeff::hbar(-1)));
}

std::pair<ExpPoly, ExpPoly> verify_gf_relation(const ExpPoly& F, const PhasePoly& Q,
                                               const PhasePoly& P) {
  return {star(F, PhasePoly::q()) - star(Q, F), star(F, PhasePoly::p()) - star(P, F)};
}

PhasePoly canonicity_residual(const CanonicalPair& ct) {
  return moyal_bracket(ct.Q, ct.P) - PhasePoly(i_hbar());
}

bool is_canonical(const CanonicalPair& ct) { return canonicity_residual(ct).is_zero(); }

std::vector<PhasePoly> lie_conjugate(const PhasePoly& f, const PhasePoly& u, const Coeff& lambda,
                                     int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "series order must be non-negative");
  std::vector<PhasePoly> out{u};
  PhasePoly nested = u;
  Coeff weight(1);
  for (int k = 1; k <= order; ++k) {
    nested = moyal_bracket(f, nested);
    weight = weight * lambda * Coeff::rational(1, k);
    out.push_back(nested * weight);
  }
  return out;
}

ExpPoly gf_exp_poly(const GeneratingFn& F) {
  return std::visit(
      overloaded{
          [](const GaugeGF& g) { return ExpPoly::exp(g.f * g.lambda); },
          [](const PointGF&) -> ExpPoly {
            throw Error(ErrorCode::UnsupportedVariant, "point generating function has no exact form");
          },
          [](const LinearGF& g) { return linear_gf(g.L); },
          [](const InterchangeGF&) { return linear_gf(LinearCT::interchange()); },
          [](const CubicGaugeGF& g) { return ExpPoly::exp(PhasePoly::q(3) * cubic_lambda(g.nu)); },
          [](const ExplicitGF& g) { return g.F; },
      },
      F);
}

ClosedFn point_gf_closed_form(const PointGF& F) {
  return exp(ClosedFn(F.lambda) * (F.f * ClosedFn::p() + F.g));
}

PhasePoly gauge_transform_known_ct(const GeneratingFn& F, const PhasePoly& u) {
  return std::visit(
      overloaded{
          [&](const GaugeGF& g) { return gauge_action(g.f, g.lambda, u); },
          [](const PointGF&) -> PhasePoly {
            throw Error(ErrorCode::UnsupportedVariant, "point transformation has no exact action");
          },
          [&](const LinearGF& g) { return linear_act(g.L, u); },
          [&](const InterchangeGF&) { return linear_act(LinearCT::interchange(), u); },
          [&](const CubicGaugeGF& g) { return gauge_action(PhasePoly::q(3), cubic_lambda(g.nu), u); },
          [](const ExplicitGF&) -> PhasePoly {
            throw Error(ErrorCode::UnsupportedVariant,
                        "explicit generating function: use verify_gf_relation");
          },
      },
      F);
}

CanonicalPair ct_from_gf_defnalt(const ExpPoly& F) {
  const PhasePoly& S = F.phase();
  if (S.depends_on_q() && S.depends_on_p())
    throw Error(ErrorCode::MixedPhase, "phase depends on both q and p");
  if (!F.prefactor().is_constant() || F.prefactor().is_zero())
    throw Error(ErrorCode::MixedPhase, "prefactor must be a nonzero constant");
  const Coeff c = F.prefactor().constant_term();
  // F^{-1} = c^{-1} exp(-S); for a one-variable phase the star product with
  // it is the pointwise product
  const ExpPoly inv(PhasePoly(c.inverse()), -S);
  auto times_inverse = [&](const ExpPoly& g) {
    const ExpPoly prod = g * inv;
    if (!prod.phase().is_zero()) throw Error(ErrorCode::MixedPhase, "phase did not cancel");
    return prod.prefactor();
  };
  return {PhasePoly::q() - times_inverse(F.d_p()) * i_hbar(),
          PhasePoly::p() + times_inverse(F.d_q()) * i_hbar()};
}

}  // namespace psq
