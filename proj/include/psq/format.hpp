#pragma once

#include <string>
#include <utility>
#include <vector>

#include "psq/diffop.hpp"

namespace psq {

// Canonical text form, e.g. "q*p - (1/2)*i*hbar". Rationals print exactly,
// negative exponents as "hbar^-1". The output parses back to the same value.
std::string to_string(const GaussRat& g);
std::string to_string(const Coeff& c);
std::string to_string(const PhasePoly& f);
std::string to_string(const ExpPoly& f);
std::string to_string(const DiffOp& d);

/// Joins coefficient * (extra factors) atoms with " + " / " - ".
/// `extras` are appended verbatim after the coefficient's own symbols.
std::string format_sum(const std::vector<std::pair<Coeff, std::vector<std::string>>>& terms);

/// "name" or "name^k"; empty for k == 0.
std::string power_string(const std::string& name, int k);

}  // namespace psq
