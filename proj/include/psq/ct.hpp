#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "psq/closed_fn.hpp"
#include "psq/star.hpp"

namespace psq {

// ---------------------------------------------------------------------------
// Exact canonical pairs

/// (Q, P) with polynomial components.
struct CanonicalPair {
  PhasePoly Q;
  PhasePoly P;
};

/// Q = q, P = p + i hbar lambda f'(q). Throws NotFunctionOfQ if f depends on p.
CanonicalPair gauge_ct(const PhasePoly& f, const Coeff& lambda);

/// exp(-(i/hbar) * integral of u dq); u must be a function of q.
ExpPoly gauge_gf_from_ct(const PhasePoly& u);

/// (F*q - Q*F, F*p - P*F). Both vanish iff F generates (Q, P).
std::pair<ExpPoly, ExpPoly> verify_gf_relation(const ExpPoly& F, const PhasePoly& Q,
                                               const PhasePoly& P);

/// {Q,P}_M - i hbar. Zero iff the pair is canonical.
PhasePoly canonicity_residual(const CanonicalPair& ct);
bool is_canonical(const CanonicalPair& ct);

// ---------------------------------------------------------------------------
// Linear transformations (q, p) -> (a q + b p, c q + d p)

struct LinearCT {
  Coeff a, b, c, d;

  static LinearCT identity() { return {1, 0, 0, 1}; }
  static LinearCT interchange() { return {0, 1, -1, 0}; }

  Coeff det() const { return a * d - b * c; }
  /// Matrix product. linear_act(L1, linear_act(L2, u)) == linear_act(L2 * L1, u).
  friend LinearCT operator*(const LinearCT& x, const LinearCT& y);
  friend bool operator==(const LinearCT& x, const LinearCT& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

/// Throws NotSymplectic unless ad - bc == 1 exactly.
void require_symplectic(const LinearCT& L);

PhasePoly linear_act(const LinearCT& L, const PhasePoly& u);
CanonicalPair linear_pair(const LinearCT& L);

/// exp(2 i A [b p^2 - c q^2 + (a - d) q p] / hbar), A = 1/(a + d + 2).
/// Throws SingularCayley when a + d + 2 == 0.
ExpPoly linear_gf(const LinearCT& L);

struct LinearDecomposition {
  Coeff alpha, beta, k;
};

/// Parameters of exp(lambda qp) * exp(beta q^2) * exp(alpha p^2) with
/// lambda = (i/hbar) ln k. Throws DegenerateDecomposition when d == 0.
LinearDecomposition linear_decompose(const LinearCT& L);

/// The three factor matrices (scaling, q^2 gauge, p^2 gauge) in the order
/// whose nested action reproduces L:
///   linear_act(S, linear_act(Gq, linear_act(Gp, u))) == linear_act(L, u).
struct DecompositionFactors {
  LinearCT scaling, gauge_q, gauge_p;
};
DecompositionFactors decomposition_factors(const LinearDecomposition& dec);

// ---------------------------------------------------------------------------
// Lie-series conjugation and known generating functions

/// Terms lambda^k/k! (L_f)^k u, k = 0..order, where L_f u = f*u - u*f.
std::vector<PhasePoly> lie_conjugate(const PhasePoly& f, const PhasePoly& u, const Coeff& lambda,
                                     int order);

struct GaugeGF {
  PhasePoly f;  // function of q
  Coeff lambda;
};
/// exp(lambda [f(q) p + g(q)]), numeric.
struct PointGF {
  ClosedFn f, g;
  cplx lambda;
  double hbar = 1.0;
};
struct LinearGF {
  LinearCT L;
};
struct InterchangeGF {};
/// exp(-i nu q^3 / (3 hbar))
struct CubicGaugeGF {
  Coeff nu;
};
struct ExplicitGF {
  ExpPoly F;
};

using GeneratingFn =
    std::variant<GaugeGF, PointGF, LinearGF, InterchangeGF, CubicGaugeGF, ExplicitGF>;

/// Exact form of the generating function. PointGF has no exact form and
/// throws UnsupportedVariant; use point_gf_closed_form.
ExpPoly gf_exp_poly(const GeneratingFn& F);
ClosedFn point_gf_closed_form(const PointGF& F);

/// Exact action F * u * F^{-1}. Throws UnsupportedVariant for ExplicitGF and PointGF.
PhasePoly gauge_transform_known_ct(const GeneratingFn& F, const PhasePoly& u);

/// Pair from q - i hbar (d_p F)*F^{-1}, p + i hbar (d_q F)*F^{-1} when the
/// phase depends on one variable only (the ordinary inverse is then the star
/// inverse). Throws MixedPhase otherwise.
CanonicalPair ct_from_gf_defnalt(const ExpPoly& F);

// ---------------------------------------------------------------------------
// Point transformations (numeric). m = i hbar lambda is supplied as a number.

struct PointSample {
  cplx q;        // parameter point
  cplx upsilon;  // q + m f/2
  cplx Q;        // Q(upsilon) = q - m f/2
  cplx Qtilde;   // (2 + m f')/(2 - m f')
  cplx chi;
};

/// Forward point transformation from generating data f(q), g(q).
class PointCT {
 public:
  PointCT(ClosedFn f, ClosedFn g, cplx m, double hbar = 1.0);

  /// Values at parameter q (upsilon = q + m f(q)/2).
  PointSample at_parameter(cplx q) const;
  /// Values at argument x; solves upsilon(q*) = x by Newton from `guess`
  /// (default x). Throws NoConvergence.
  PointSample at(cplx x, std::optional<cplx> guess = std::nullopt) const;

  cplx Q(cplx x) const { return at(x).Q; }
  /// P(x, p) = Qtilde(x) p + chi(x).
  cplx P(cplx x, cplx p) const;

  cplx m() const { return m_; }
  double hbar() const { return hbar_; }
  const ClosedFn& f() const { return f_; }
  const ClosedFn& g() const { return g_; }

 private:
  ClosedFn f_, g_, df_, d2f_, dg_;
  cplx m_;
  double hbar_;
};

/// Throws SingularDenominator if 2 - m f' vanishes at any sample.
PointCT point_ct_forward(const ClosedFn& f, const ClosedFn& g, cplx m,
                         const std::vector<double>& samples, double hbar = 1.0);

/// max |Q'(x) P_p(x) - 1| over samples, with Q' from central differences of
/// the numerically inverted map; {Q,P}_M = i hbar Q' d_pP for this class.
double point_canonicity_residual(const PointCT& ct, const std::vector<double>& samples,
                                 double h = 1e-5);

enum class Branch { Principal, Plus, Minus };

struct InverseSample {
  double q;
  cplx f;
  double residual;
  int iterations;
};

struct InverseOptions {
  Branch branch = Branch::Principal;
  int max_iterations = 100;
  double tolerance = 1e-10;
  /// Per-sample initial guess for f; when absent a fixed multi-start set is used.
  std::function<cplx(double)> guess;
};

/// Solves Q(q + m f/2) = q - m f/2 for f at each sample. Principal picks the
/// root of least modulus (ties broken towards Plus), Plus the root with the
/// largest imaginary part, then real part; Minus the opposite.
std::vector<InverseSample> point_ct_inverse(const ClosedFn& Q, cplx m,
                                            const std::vector<double>& samples,
                                            const InverseOptions& opts = {});

/// g with chi == 0: g' = -(i hbar/2) Qtilde'(upsilon) f' / (1 + Qtilde).
/// Integrated by adaptive Gauss-Kronrod from samples.front(), so g(samples[0]) = 0.
/// Throws SingularIntegrand.
std::vector<cplx> point_g_from_f(const ClosedFn& f, cplx m, const std::vector<double>& samples,
                                 double hbar = 1.0);
/// The integrand above at one point.
cplx point_g_integrand(const ClosedFn& f, cplx m, double q, double hbar = 1.0);

/// True iff dQtilde/dupsilon == dQtilde/dq to 1e-9 at every sample.
bool point_case_iv_predicate(const ClosedFn& f, cplx m, const std::vector<double>& samples);

/// Time-1 flow of dq/dt = -m f(q) from q0 (dopri5, tolerance 1e-12).
/// Throws FlowEscape on blow-up.
cplx flow_A(const ClosedFn& f, cplx m, cplx q0);

}  // namespace psq
