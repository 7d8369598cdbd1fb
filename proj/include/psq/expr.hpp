#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "psq/closed_fn.hpp"
#include "psq/star.hpp"
#include "psq/weyl.hpp"

namespace psq {

struct Expr {
  enum class Kind { Number, Imag, Symbol, Add, Sub, Mul, Div, Neg, Pow, Call };
  Kind kind = Kind::Number;
  mpq_class number;  // Number
  std::string name;  // Symbol / Call
  std::vector<std::shared_ptr<const Expr>> args;
  int offset = 0;  // source position, for diagnostics
};
using ExprPtr = std::shared_ptr<const Expr>;

/// Parses one expression. Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('-'|'+') unary | power
///   power  := base ('^' ('-'? number | base))?
///   base   := number | 'i' | symbol | '(' expr ')' | symbol '(' expr (',' expr)* ')'
/// Throws SyntaxError with a 1-based line/column and the expected tokens.
ExprPtr parse_expr(const std::string& text);

/// Symbols allowed in exact lowering besides q, p, hbar and i.
struct SymbolTable {
  std::set<std::string> params;
};

/// Exact lowering to a polynomial or exponential. Supports exp, star, bracket.
/// Throws UnknownSymbol, NonInvertible (division by a non-unit) or
/// InvalidArgument for non-exact functions.
PhaseFn lower_exact(const ExprPtr& e, const SymbolTable& symbols);
PhasePoly lower_poly(const ExprPtr& e, const SymbolTable& symbols);
ExpPoly lower_exp_poly(const ExprPtr& e, const SymbolTable& symbols);
Coeff lower_coeff(const ExprPtr& e, const SymbolTable& symbols);

/// Operator lowering in the symbols qhat, phat (products keep their order).
OpPoly lower_operator(const ExprPtr& e, const SymbolTable& symbols);

/// Numeric lowering in q, p; every other symbol must appear in `values`.
ClosedFn lower_closed(const ExprPtr& e, const std::map<std::string, cplx>& values);

std::string to_string(const OpPoly& a);

}  // namespace psq
