#include "psq/closed_fn.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "psq/airy.hpp"
#include "psq/error.hpp"

namespace psq {

struct ClosedFn::Node {
  Kind kind = Kind::Const;
  cplx value{};
  Var var = Var::Q;
  Func func = Func::Exp;
  std::vector<ClosedFn> args;
  const ClosedFn& a() const { return args[0]; }
  const ClosedFn& b() const { return args[1]; }
};

namespace {

bool is_const(const ClosedFn& f, cplx v) {
  auto c = f.constant_value();
  return c && *c == v;
}

cplx ipow(cplx base, long n) {
  if (n < 0) return 1.0 / ipow(base, -n);
  cplx r = 1.0;
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

double real_arg(cplx z, const char* name) {
  if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z.real())))
    throw Error(ErrorCode::DomainError, std::string(name) + " needs a real argument");
  return z.real();
}

const char* func_name(ClosedFn::Func f) {
  switch (f) {
    case ClosedFn::Func::Exp: return "exp";
    case ClosedFn::Func::Log: return "log";
    case ClosedFn::Func::Sqrt: return "sqrt";
    case ClosedFn::Func::Sin: return "sin";
    case ClosedFn::Func::Cos: return "cos";
    case ClosedFn::Func::Sinh: return "sinh";
    case ClosedFn::Func::Cosh: return "cosh";
    case ClosedFn::Func::Tanh: return "tanh";
    case ClosedFn::Func::Airy: return "airy";
    case ClosedFn::Func::AiryPrime: return "airy_prime";
  }
  return "?";
}

}  // namespace

ClosedFn::ClosedFn(cplx v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = v;
  node_ = std::move(n);
}

ClosedFn ClosedFn::var(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = v;
  return ClosedFn(std::shared_ptr<const Node>(std::move(n)));
}

std::optional<cplx> ClosedFn::constant_value() const {
  if (node_->kind == Kind::Const) return node_->value;
  return std::nullopt;
}

ClosedFn ClosedFn::apply(Func f, const ClosedFn& arg) {
  if (auto c = arg.constant_value()) {
    if (f != Func::Airy && f != Func::AiryPrime) {
      ClosedFn tmp = apply(f, var(Var::Q));
      return ClosedFn(tmp(*c));
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Func;
  n->func = f;
  n->args = {arg};
  return ClosedFn(std::shared_ptr<const Node>(std::move(n)));
}

ClosedFn ClosedFn::pow(const ClosedFn& base, const ClosedFn& exponent) {
  if (is_const(exponent, 0.0)) return ClosedFn(1.0);
  if (is_const(exponent, 1.0)) return base;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->args = {base, exponent};
  return ClosedFn(std::shared_ptr<const Node>(std::move(n)));
}

ClosedFn operator+(const ClosedFn& a, const ClosedFn& b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb) return ClosedFn(*ca + *cb);
  if (ca && *ca == 0.0) return b;
  if (cb && *cb == 0.0) return a;
  auto n = std::make_shared<ClosedFn::Node>();
  n->kind = ClosedFn::Kind::Add;
  n->args = {a, b};
  return ClosedFn(std::shared_ptr<const ClosedFn::Node>(std::move(n)));
}

ClosedFn operator-(const ClosedFn& a, const ClosedFn& b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb) return ClosedFn(*ca - *cb);
  if (cb && *cb == 0.0) return a;
  if (ca && *ca == 0.0) return -b;
  auto n = std::make_shared<ClosedFn::Node>();
  n->kind = ClosedFn::Kind::Sub;
  n->args = {a, b};
  return ClosedFn(std::shared_ptr<const ClosedFn::Node>(std::move(n)));
}

ClosedFn operator*(const ClosedFn& a, const ClosedFn& b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb) return ClosedFn(*ca * *cb);
  if ((ca && *ca == 0.0) || (cb && *cb == 0.0)) return ClosedFn(0.0);
  if (ca && *ca == 1.0) return b;
  if (cb && *cb == 1.0) return a;
  auto n = std::make_shared<ClosedFn::Node>();
  n->kind = ClosedFn::Kind::Mul;
  n->args = {a, b};
  return ClosedFn(std::shared_ptr<const ClosedFn::Node>(std::move(n)));
}

ClosedFn operator/(const ClosedFn& a, const ClosedFn& b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (cb && *cb == 0.0) throw Error(ErrorCode::DomainError, "division by constant zero");
  if (ca && cb) return ClosedFn(*ca / *cb);
  if (ca && *ca == 0.0) return ClosedFn(0.0);
  if (cb && *cb == 1.0) return a;
  auto n = std::make_shared<ClosedFn::Node>();
  n->kind = ClosedFn::Kind::Div;
  n->args = {a, b};
  return ClosedFn(std::shared_ptr<const ClosedFn::Node>(std::move(n)));
}

ClosedFn ClosedFn::operator-() const {
  if (auto c = constant_value()) return ClosedFn(-*c);
  if (node_->kind == Kind::Neg) return node_->a();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->args = {*this};
  return ClosedFn(std::shared_ptr<const Node>(std::move(n)));
}

ClosedFn exp(const ClosedFn& x) { return ClosedFn::apply(ClosedFn::Func::Exp, x); }
ClosedFn log(const ClosedFn& x) { return ClosedFn::apply(ClosedFn::Func::Log, x); }
ClosedFn sqrt(const ClosedFn& x) { return ClosedFn::apply(ClosedFn::Func::Sqrt, x); }

cplx ClosedFn::operator()(cplx qv, cplx pv) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const: return n.value;
    case Kind::Var: return n.var == Var::Q ? qv : pv;
    case Kind::Add: return n.a()(qv, pv) + n.b()(qv, pv);
    case Kind::Sub: return n.a()(qv, pv) - n.b()(qv, pv);
    case Kind::Mul: return n.a()(qv, pv) * n.b()(qv, pv);
    case Kind::Div: return n.a()(qv, pv) / n.b()(qv, pv);
    case Kind::Neg: return -n.a()(qv, pv);
    case Kind::Pow: {
      const cplx base = n.a()(qv, pv);
      const cplx e = n.b()(qv, pv);
      if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) < 1e9)
        return ipow(base, static_cast<long>(e.real()));
      return std::pow(base, e);
    }
    case Kind::Func: {
      const cplx x = n.a()(qv, pv);
      switch (n.func) {
        case Func::Exp: return std::exp(x);
        case Func::Log: return std::log(x);
        case Func::Sqrt: return std::sqrt(x);
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Sinh: return std::sinh(x);
        case Func::Cosh: return std::cosh(x);
        case Func::Tanh: return std::tanh(x);
        case Func::Airy: return airy(real_arg(x, "airy"));
        case Func::AiryPrime: return airy_prime(real_arg(x, "airy_prime"));
      }
    }
  }
  return 0.0;
}

ClosedFn ClosedFn::derivative(Var v) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const: return ClosedFn(0.0);
    case Kind::Var: return ClosedFn(n.var == v ? 1.0 : 0.0);
    case Kind::Add: return n.a().derivative(v) + n.b().derivative(v);
    case Kind::Sub: return n.a().derivative(v) - n.b().derivative(v);
    case Kind::Mul: return n.a().derivative(v) * n.b() + n.a() * n.b().derivative(v);
    case Kind::Div:
      return (n.a().derivative(v) * n.b() - n.a() * n.b().derivative(v)) / (n.b() * n.b());
    case Kind::Neg: return -n.a().derivative(v);
    case Kind::Pow: {
      const ClosedFn da = n.a().derivative(v);
      if (auto c = n.b().constant_value()) return ClosedFn(*c) * pow(n.a(), ClosedFn(*c - 1.0)) * da;
      const ClosedFn db = n.b().derivative(v);
      return *this * (db * log(n.a()) + n.b() * da / n.a());
    }
    case Kind::Func: {
      const ClosedFn da = n.a().derivative(v);
      if (da.constant_value() && *da.constant_value() == 0.0) return ClosedFn(0.0);
      switch (n.func) {
        case Func::Exp: return *this * da;
        case Func::Log: return da / n.a();
        case Func::Sqrt: return da / (ClosedFn(2.0) * *this);
        case Func::Sin: return apply(Func::Cos, n.a()) * da;
        case Func::Cos: return -(apply(Func::Sin, n.a()) * da);
        case Func::Sinh: return apply(Func::Cosh, n.a()) * da;
        case Func::Cosh: return apply(Func::Sinh, n.a()) * da;
        case Func::Tanh: return (ClosedFn(1.0) - *this * *this) * da;
        case Func::Airy: return apply(Func::AiryPrime, n.a()) * da;
        case Func::AiryPrime: return n.a() * apply(Func::Airy, n.a()) * da;
      }
    }
  }
  return ClosedFn(0.0);
}

bool ClosedFn::depends_on(Var v) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const: return false;
    case Kind::Var: return n.var == v;
    case Kind::Neg:
    case Kind::Func: return n.a().depends_on(v);
    default: return n.a().depends_on(v) || n.b().depends_on(v);
  }
}

bool ClosedFn::is_constant() const { return !depends_on(Var::Q) && !depends_on(Var::P); }

std::string ClosedFn::to_string() const {
  const Node& n = *node_;
  std::ostringstream os;
  os.precision(17);
  switch (n.kind) {
    case Kind::Const:
      if (n.value.imag() == 0.0)
        os << n.value.real();
      else
        os << "(" << n.value.real() << (n.value.imag() < 0 ? "-" : "+") << std::abs(n.value.imag())
           << "*i)";
      break;
    case Kind::Var: os << (n.var == Var::Q ? "q" : "p"); break;
    case Kind::Add: os << "(" << n.a().to_string() << " + " << n.b().to_string() << ")"; break;
    case Kind::Sub: os << "(" << n.a().to_string() << " - " << n.b().to_string() << ")"; break;
    case Kind::Mul: os << n.a().to_string() << "*" << n.b().to_string(); break;
    case Kind::Div: os << n.a().to_string() << "/(" << n.b().to_string() << ")"; break;
    case Kind::Neg: os << "-(" << n.a().to_string() << ")"; break;
    case Kind::Pow: os << "(" << n.a().to_string() << ")^(" << n.b().to_string() << ")"; break;
    case Kind::Func: os << func_name(n.func) << "(" << n.a().to_string() << ")"; break;
  }
  return os.str();
}

ClosedFn ClosedFn::from_poly(const PhasePoly& f, const std::map<std::string, cplx>& params) {
  ClosedFn r(0.0);
  for (const auto& [pw, c] : f.terms()) {
    ClosedFn term(c.evaluate(params));
    if (pw.q) term = term * pow(q(), ClosedFn(double(pw.q)));
    if (pw.p) term = term * pow(p(), ClosedFn(double(pw.p)));
    r = r + term;
  }
  return r;
}

ClosedFn ClosedFn::from_exp_poly(const ExpPoly& f, const std::map<std::string, cplx>& params) {
  return from_poly(f.prefactor(), params) * exp(from_poly(f.phase(), params));
}

}  // namespace psq
