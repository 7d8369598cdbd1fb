#include "psq/ct.hpp"
#include "psq/error.hpp"
#include "psq/format.hpp"

namespace psq {

LinearCT operator*(const LinearCT& x, const LinearCT& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

void require_symplectic(const LinearCT& L) {
  const Coeff det = L.det();
  if (det != Coeff(1))
    throw Error(ErrorCode::NotSymplectic, "ad - bc = " + to_string(det) + ", expected 1");
}

PhasePoly linear_act(const LinearCT& L, const PhasePoly& u) {
  require_symplectic(L);
  const PhasePoly q = PhasePoly::q(), p = PhasePoly::p();
  return u.compose(q * L.a + p * L.b, q * L.c + p * L.d);
}

CanonicalPair linear_pair(const LinearCT& L) {
  require_symplectic(L);
  return {linear_act(L, PhasePoly::q()), linear_act(L, PhasePoly::p())};
}

ExpPoly linear_gf(const LinearCT& L) {
  require_symplectic(L);
  const Coeff denom = L.a + L.d + Coeff(2);
  if (denom.is_zero()) throw Error(ErrorCode::SingularCayley, "a + d + 2 = 0");
  const Coeff A = denom.inverse();
  const Coeff scale = Coeff(GaussRat(0, 2)) * A * Coeff::hbar(-1);
  PhasePoly phase = PhasePoly::p(2) * L.b - PhasePoly::q(2) * L.c +
                    PhasePoly::monomial(1, 1, L.a - L.d);
  return ExpPoly::exp(phase * scale);
}

LinearDecomposition linear_decompose(const LinearCT& L) {
  require_symplectic(L);
  if (L.d.is_zero())
    throw Error(ErrorCode::DegenerateDecomposition,
                "d = 0: use the interchange factorisation instead");
  const Coeff k = L.d.inverse();
  const Coeff half_i_over_hbar = Coeff(GaussRat(0, mpq_class(1, 2))) * Coeff::hbar(-1);
  return {half_i_over_hbar * L.b * k, -half_i_over_hbar * L.c * L.d, k};
}

DecompositionFactors decomposition_factors(const LinearDecomposition& dec) {
  const Coeff two_i_hbar = Coeff(GaussRat(0, 2)) * Coeff::hbar();
  return {{dec.k, 0, 0, dec.k.inverse()},
          {1, 0, two_i_hbar * dec.beta, 1},
          {1, -two_i_hbar * dec.alpha, 0, 1}};
}

}  // namespace psq
