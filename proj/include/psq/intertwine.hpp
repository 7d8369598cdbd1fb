#pragma once

#include <vector>

#include "psq/closed_fn.hpp"
#include "psq/star.hpp"

namespace psq {

struct PotentialPair {
  PhasePoly V0, V1;
  PhasePoly phi;
};

struct SusyPair {
  PotentialPair potentials;
  PhasePoly L;  // p - i phi(q)
};

/// V0 = phi^2 - hbar phi', V1 = phi^2 + hbar phi', L = p - i phi.
SusyPair susy_pair_from_phi(const PhasePoly& phi);

struct DarbouxResult {
  ClosedFn phi;     // -hbar phi0'/phi0
  ClosedFn V0;      // hbar^2 phi0''/phi0
  double riccati_residual;  // max |V0 - (phi^2 - hbar phi')| over the samples
};

/// Throws ZeroNode when phi0 vanishes at a sample.
DarbouxResult darboux_phi_from_zeromode(const ClosedFn& phi0, double hbar,
                                        const std::vector<double>& samples);

/// L*H0 - H1*L.
PhaseFn intertwine_residual(const PhaseFn& L, const PhasePoly& H0, const PhasePoly& H1);

/// V(q + c d_p) expanded binomially.
DiffOp bopp_shift_q(const PhasePoly& V, const Coeff& c);

/// V1(q + i hbar d_p/2) L - V0(q - i hbar d_p/2) L - 2 i hbar p d_q L.
PhaseFn twopotentials_residual(const PhaseFn& L, const PhasePoly& V0, const PhasePoly& V1);

/// exp(-W/hbar)*p - (p - i phi)*exp(-W/hbar), W the antiderivative of phi.
ExpPoly susy_gauge_relation_residual(const PhasePoly& phi);

struct FiveStepSample {
  double q;
  double q_residual;       // |Q(upsilon) - upsilon^2|
  double qtilde_residual;  // |Qtilde - 1/(2 upsilon)|
  double chi_residual;     // |chi|
};

struct FiveStepReport {
  std::vector<FiveStepSample> samples;
  double max_residual = 0.0;
  bool pass = false;
};

/// Checks the ordinary-exponential data f = -(2q + 1 + sqrt(1+8q))/m,
/// g = (i hbar/(2m)) ln[(1 + sqrt(1+8q))/(1+8q)] against Q = q^2, P = p/(2q).
/// Throws DomainError for 1 + 8q <= 0 or q == 0.
FiveStepReport five_step_verify(cplx m, const std::vector<double>& samples, double hbar = 1.0,
                                double tolerance = 1e-9);

}  // namespace psq
