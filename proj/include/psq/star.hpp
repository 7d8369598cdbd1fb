#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psq/diffop.hpp"

namespace psq {

/// A phase-space function in the exact layer.
using PhaseFn = std::variant<PhasePoly, ExpPoly>;

/// Optional coefficient truncation applied while multiplying: terms whose
/// degree in `symbol` exceeds `max_degree` are dropped.
struct Truncation {
  std::string symbol;
  int max_degree = 0;
};

// Groenewold star product
//   f * g = sum_s (i hbar/2)^s / s! sum_t (-1)^t C(s,t)
//           (d_q^{s-t} d_p^t f)(d_p^{s-t} d_q^t g)
// evaluated exactly. The series terminates on the polynomial factor.
PhasePoly star(const PhasePoly& f, const PhasePoly& g,
               const std::optional<Truncation>& trunc = std::nullopt);
ExpPoly star(const ExpPoly& f, const PhasePoly& g);
ExpPoly star(const PhasePoly& f, const ExpPoly& g);
/// Throws UnsupportedProduct when both arguments are exponentials.
PhaseFn star(const PhaseFn& f, const PhaseFn& g);

PhasePoly moyal_bracket(const PhasePoly& f, const PhasePoly& g);
ExpPoly moyal_bracket(const ExpPoly& f, const PhasePoly& g);
ExpPoly moyal_bracket(const PhasePoly& f, const ExpPoly& g);
PhaseFn moyal_bracket(const PhaseFn& f, const PhaseFn& g);

/// Classical Poisson bracket d_q f d_p g - d_p f d_q g.
PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g);

/// Terms lambda^k f^{*k} / k! for k = 0..order.
std::vector<PhasePoly> star_exponential(const PhasePoly& f, const Coeff& lambda, int order,
                                        const std::optional<Truncation>& trunc = std::nullopt);
PhasePoly sum_series(const std::vector<PhasePoly>& terms);

/// Neumann series for the star inverse of f = c(1 - n): c^{-1} sum_{k<=order} n^{*k}.
/// Throws NonInvertibleConstantTerm when the constant part of f is zero.
PhasePoly star_inverse_series(const PhasePoly& f, int order);

PhasePoly apply_diffop(const DiffOp& d, const PhasePoly& f);
ExpPoly apply_diffop(const DiffOp& d, const ExpPoly& f);
PhaseFn apply_diffop(const DiffOp& d, const PhaseFn& f);

/// The Lie operator u -> f*u - u*f as a finite differential operator.
DiffOp lie_operator_of(const PhasePoly& f);

/// Bopp-shift operators: star_left_operator(f)(g) = f*g and
/// star_right_operator(g)(f) = f*g.
DiffOp star_left_operator(const PhasePoly& f);
DiffOp star_right_operator(const PhasePoly& g);

/// Coefficientwise ħ -> 0; throws when a negative power of ħ is present.
PhasePoly classical_limit(const PhasePoly& f);

}  // namespace psq
