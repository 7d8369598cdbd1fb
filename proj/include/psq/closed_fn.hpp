#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "psq/exp_poly.hpp"

namespace psq {

using cplx = std::complex<double>;

enum class Var { Q, P };

/// Numeric closed-form function of (q, p): an immutable expression tree
/// with complex evaluation and symbolic differentiation. Used wherever the
/// exact layer cannot represent a function (1/q, ln q, sqrt, Airy, ...).
class ClosedFn {
 public:
  enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Func };
  enum class Func { Exp, Log, Sqrt, Sin, Cos, Sinh, Cosh, Tanh, Airy, AiryPrime };

  struct Node;

  ClosedFn() : ClosedFn(cplx(0.0)) {}
  ClosedFn(double v) : ClosedFn(cplx(v)) {}
  ClosedFn(cplx v);

  static ClosedFn var(Var v);
  static ClosedFn q() { return var(Var::Q); }
  static ClosedFn p() { return var(Var::P); }
  static ClosedFn apply(Func f, const ClosedFn& arg);
  static ClosedFn pow(const ClosedFn& base, const ClosedFn& exponent);

  /// Numeric image of an exact object; symbols take values from `params`.
  static ClosedFn from_poly(const PhasePoly& f, const std::map<std::string, cplx>& params);
  static ClosedFn from_exp_poly(const ExpPoly& f, const std::map<std::string, cplx>& params);

  cplx operator()(cplx qv, cplx pv = 0.0) const;
  ClosedFn derivative(Var v) const;
  ClosedFn d_q() const { return derivative(Var::Q); }
  ClosedFn d_p() const { return derivative(Var::P); }

  bool is_constant() const;
  bool depends_on(Var v) const;
  std::optional<cplx> constant_value() const;
  std::string to_string() const;

  friend ClosedFn operator+(const ClosedFn& a, const ClosedFn& b);
  friend ClosedFn operator-(const ClosedFn& a, const ClosedFn& b);
  friend ClosedFn operator*(const ClosedFn& a, const ClosedFn& b);
  friend ClosedFn operator/(const ClosedFn& a, const ClosedFn& b);
  ClosedFn operator-() const;

  const std::shared_ptr<const Node>& node() const { return node_; }

 private:
  explicit ClosedFn(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

ClosedFn exp(const ClosedFn& x);
ClosedFn log(const ClosedFn& x);
ClosedFn sqrt(const ClosedFn& x);

}  // namespace psq
