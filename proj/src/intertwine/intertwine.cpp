#include "psq/intertwine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "psq/ct.hpp"
#include "psq/error.hpp"

namespace psq {

SusyPair susy_pair_from_phi(const PhasePoly& phi) {
  if (phi.depends_on_p()) throw Error(ErrorCode::NotFunctionOfQ, "superpotential must depend on q only");
  const PhasePoly sq = phi * phi;
  const PhasePoly d = phi.d_q() * Coeff::hbar();
  return {{sq - d, sq + d, phi}, PhasePoly::p() - phi * Coeff::i()};
}

DarbouxResult darboux_phi_from_zeromode(const ClosedFn& phi0, double hbar,
                                        const std::vector<double>& samples) {
  double peak = 0.0;
  for (double q : samples) peak = std::max(peak, std::abs(phi0(q)));
  for (double q : samples) {
    if (!(std::abs(phi0(q)) > 1e-14 * peak)) {
      std::ostringstream os;
      os << "zero mode vanishes at q = " << q;
      throw Error(ErrorCode::ZeroNode, os.str());
    }
  }
  const ClosedFn d1 = phi0.d_q();
  const ClosedFn phi = ClosedFn(-hbar) * d1 / phi0;
  const ClosedFn V0 = ClosedFn(hbar * hbar) * d1.d_q() / phi0;
  const ClosedFn dphi = phi.d_q();
  double worst = 0.0;
  for (double q : samples) {
    const cplx ph = phi(q);
    worst = std::max(worst, std::abs(V0(q) - (ph * ph - hbar * dphi(q))));
  }
  return {phi, V0, worst};
}

PhaseFn intertwine_residual(const PhaseFn& L, const PhasePoly& H0, const PhasePoly& H1) {
  const PhaseFn lhs = star(L, PhaseFn(H0));
  const PhaseFn rhs = star(PhaseFn(H1), L);
  return std::visit(
      [](const auto& a, const auto& b) -> PhaseFn {
        using A = std::decay_t<decltype(a)>;
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<A, B>) {
          return a - b;
        } else {
          throw Error(ErrorCode::IncompatiblePhase, "mixed residual types");
        }
      },
      lhs, rhs);
}

DiffOp bopp_shift_q(const PhasePoly& V, const Coeff& c) {
  if (V.depends_on_p()) throw Error(ErrorCode::NotFunctionOfQ, "potential must depend on q only");
  DiffOp out;
  for (const auto& [pw, coeff] : V.terms()) {
    const int n = pw.q;
    for (int k = 0; k <= n; ++k) {
      const Coeff w = coeff * Coeff(GaussRat(mpq_class(binomial(n, k)))) * c.pow(k);
      out.add_term({0, k}, PhasePoly::monomial(n - k, 0, w));
    }
  }
  return out;
}

PhaseFn twopotentials_residual(const PhaseFn& L, const PhasePoly& V0, const PhasePoly& V1) {
  const Coeff half_i_hbar = Coeff(GaussRat(0, mpq_class(1, 2))) * Coeff::hbar();
  const DiffOp op = bopp_shift_q(V1, half_i_hbar) - bopp_shift_q(V0, -half_i_hbar) -
                    DiffOp::derivative(1, 0, PhasePoly::p() * (Coeff(GaussRat(0, 2)) * Coeff::hbar()));
  return apply_diffop(op, L);
}

ExpPoly susy_gauge_relation_residual(const PhasePoly& phi) {
  const ExpPoly E = ExpPoly::exp(phi.integrate_q() * (-Coeff::hbar(-1)));
  return star(E, PhasePoly::p()) - star(PhasePoly::p() - phi * Coeff::i(), E);
}

FiveStepReport five_step_verify(cplx m, const std::vector<double>& samples, double hbar,
                                double tolerance) {
  for (double q : samples) {
    if (1.0 + 8.0 * q <= 0.0 || q == 0.0) {
      std::ostringstream os;
      os << "five-step data undefined at q = " << q;
      throw Error(ErrorCode::DomainError, os.str());
    }
  }
  const ClosedFn q = ClosedFn::q();
  const ClosedFn s = sqrt(ClosedFn(1.0) + ClosedFn(8.0) * q);
  const ClosedFn f = ClosedFn(-1.0 / m) * (ClosedFn(2.0) * q + ClosedFn(1.0) + s);
  const ClosedFn g =
      ClosedFn(cplx(0.0, hbar) / (2.0 * m)) * log((ClosedFn(1.0) + s) / (ClosedFn(1.0) + ClosedFn(8.0) * q));
  const PointCT ct(f, g, m, hbar);

  FiveStepReport rep;
  for (double qv : samples) {
    const PointSample ps = ct.at_parameter(qv);
    FiveStepSample row{qv, std::abs(ps.Q - ps.upsilon * ps.upsilon),
                       std::abs(ps.Qtilde - 1.0 / (2.0 * ps.upsilon)), std::abs(ps.chi)};
    rep.max_residual = std::max({rep.max_residual, row.q_residual, row.qtilde_residual, row.chi_residual});
    rep.samples.push_back(row);
  }
  rep.pass = rep.max_residual <= tolerance;
  return rep;
}

}  // namespace psq
