#include "psq/expr.hpp"

#include <algorithm>
#include <cctype>

#include "psq/error.hpp"
#include "psq/format.hpp"

namespace psq {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  int offset;
};

std::pair<int, int> line_col(const std::string& text, int offset) {
  int line = 1, col = 1;
  for (int k = 0; k < offset && k < int(text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void syntax_error(const std::string& text, int offset, const std::string& expected) {
  const auto [line, col] = line_col(text, offset);
  throw SyntaxError(line, col, expected,
                    "syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
                        ", expected " + expected);
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  size_t k = 0;
  while (k < text.size()) {
    const unsigned char c = text[k];
    if (std::isspace(c)) {
      ++k;
      continue;
    }
    const int start = int(k);
    if (std::isdigit(c) || (c == '.' && k + 1 < text.size() && std::isdigit(text[k + 1]))) {
      while (k < text.size() && std::isdigit((unsigned char)text[k])) ++k;
      if (k < text.size() && text[k] == '.') {
        ++k;
        while (k < text.size() && std::isdigit((unsigned char)text[k])) ++k;
      }
      out.push_back({Tok::Number, text.substr(start, k - start), start});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      while (k < text.size() && (std::isalnum((unsigned char)text[k]) || text[k] == '_')) ++k;
      out.push_back({Tok::Ident, text.substr(start, k - start), start});
      continue;
    }
    Tok t;
    switch (c) {
      case '+': t = Tok::Plus; break;
      case '-': t = Tok::Minus; break;
      case '*': t = Tok::Star; break;
      case '/': t = Tok::Slash; break;
      case '^': t = Tok::Caret; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case ',': t = Tok::Comma; break;
      default: syntax_error(text, start, "number, symbol, operator or parenthesis");
    }
    out.push_back({t, std::string(1, char(c)), start});
    ++k;
  }
  out.push_back({Tok::End, "", int(text.size())});
  return out;
}

mpq_class decimal(const std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return mpq_class(mpz_class(s, 10));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  if (digits.empty()) digits = "0";
  mpz_class den = 1;
  for (size_t k = dot + 1; k < s.size(); ++k) den *= 10;
  mpq_class r(mpz_class(digits, 10), den);
  r.canonicalize();
  return r;
}

ExprPtr node(Expr::Kind kind, int offset, std::vector<ExprPtr> args = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->offset = offset;
  e->args = std::move(args);
  return e;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text), toks_(lex(text)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) syntax_error(text_, peek().offset, "operator or end of input");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }
  void expect(Tok t, const char* what) {
    if (!accept(t)) syntax_error(text_, peek().offset, what);
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token op = next();
      lhs = node(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op.offset,
                 {lhs, term()});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = next();
      lhs = node(op.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, op.offset,
                 {lhs, unary()});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      const int off = next().offset;
      return node(Expr::Kind::Neg, off, {unary()});
    }
    if (accept(Tok::Plus)) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr b = base();
    if (peek().kind != Tok::Caret) return b;
    const int off = next().offset;
    ExprPtr e;
    if (peek().kind == Tok::Minus) {
      const int noff = next().offset;
      e = node(Expr::Kind::Neg, noff, {base()});
    } else {
      e = base();
    }
    return node(Expr::Kind::Pow, off, {b, e});
  }

  ExprPtr base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Number;
        e->number = decimal(t.text);
        e->offset = t.offset;
        return e;
      }
      case Tok::Ident: {
        const Token id = next();
        if (accept(Tok::LParen)) {
          std::vector<ExprPtr> args{expr()};
          while (accept(Tok::Comma)) args.push_back(expr());
          expect(Tok::RParen, "',' or ')'");
          auto e = std::make_shared<Expr>();
          e->kind = Expr::Kind::Call;
          e->name = id.text;
          e->args = std::move(args);
          e->offset = id.offset;
          return e;
        }
        auto e = std::make_shared<Expr>();
        e->kind = id.text == "i" ? Expr::Kind::Imag : Expr::Kind::Symbol;
        e->name = id.text;
        e->offset = id.offset;
        return e;
      }
      case Tok::LParen: {
        next();
        ExprPtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default:
        syntax_error(text_, t.offset, "number, symbol, function call or '('");
    }
  }

  const std::string& text_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

[[noreturn]] void unknown_symbol(const Expr& e, const std::string& hint = "") {
  throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + e.name + "' at offset " +
                                            std::to_string(e.offset) +
                                            (hint.empty() ? "" : " (" + hint + ")"));
}

void check_arity(const Expr& e, size_t n) {
  if (e.args.size() != n)
    throw Error(ErrorCode::InvalidArgument, e.name + " takes " + std::to_string(n) +
                                                " argument" + (n == 1 ? "" : "s"));
}

// integer exponent of a Pow node
int integer_exponent(const Expr& e) {
  const Expr* x = &e;
  int sign = 1;
  if (x->kind == Expr::Kind::Neg) {
    sign = -1;
    x = x->args[0].get();
  }
  if (x->kind != Expr::Kind::Number || x->number.get_den() != 1 || !x->number.get_num().fits_sint_p())
    throw Error(ErrorCode::InvalidArgument, "exponent must be an integer");
  return sign * int(x->number.get_num().get_si());
}

PhaseFn normalize(PhaseFn f) {
  if (auto* e = std::get_if<ExpPoly>(&f)) {
    if (e->phase().is_zero()) return e->prefactor();
  }
  return f;
}

ExpPoly as_exp(const PhaseFn& f) {
  if (auto* p = std::get_if<PhasePoly>(&f)) return ExpPoly(*p, PhasePoly());
  return std::get<ExpPoly>(f);
}

PhaseFn add(const PhaseFn& a, const PhaseFn& b, bool subtract) {
  const auto* pa = std::get_if<PhasePoly>(&a);
  const auto* pb = std::get_if<PhasePoly>(&b);
  if (pa && pb) return subtract ? *pa - *pb : *pa + *pb;
  ExpPoly x = as_exp(a), y = as_exp(b);
  return normalize(subtract ? x - y : x + y);
}

PhaseFn mul(const PhaseFn& a, const PhaseFn& b) {
  const auto* pa = std::get_if<PhasePoly>(&a);
  const auto* pb = std::get_if<PhasePoly>(&b);
  if (pa && pb) return *pa * *pb;
  return normalize(as_exp(a) * as_exp(b));
}

Coeff unit_of(const PhaseFn& f) {
  const auto* p = std::get_if<PhasePoly>(&f);
  if (!p || !p->is_constant() || !p->constant_term().is_single_term())
    throw Error(ErrorCode::NonInvertible,
                "division is only defined by nonzero single-term constants in exact mode");
  return p->constant_term();
}

PhaseFn exact(const Expr& e, const SymbolTable& st) {
  switch (e.kind) {
    case Expr::Kind::Number: return PhasePoly(Coeff(GaussRat(e.number)));
    case Expr::Kind::Imag: return PhasePoly(Coeff::i());
    case Expr::Kind::Symbol:
      if (e.name == "q") return PhasePoly::q();
      if (e.name == "p") return PhasePoly::p();
      if (e.name == kHbar) return PhasePoly(Coeff::hbar());
      if (st.params.count(e.name)) return PhasePoly(Coeff::symbol(e.name));
      unknown_symbol(e, "declare parameters with --param");
    case Expr::Kind::Add: return add(exact(*e.args[0], st), exact(*e.args[1], st), false);
    case Expr::Kind::Sub: return add(exact(*e.args[0], st), exact(*e.args[1], st), true);
    case Expr::Kind::Mul: return mul(exact(*e.args[0], st), exact(*e.args[1], st));
    case Expr::Kind::Div: {
      const Coeff c = unit_of(exact(*e.args[1], st));
      return mul(exact(*e.args[0], st), PhasePoly(c.inverse()));
    }
    case Expr::Kind::Neg: return mul(exact(*e.args[0], st), PhasePoly(-1));
    case Expr::Kind::Pow: {
      const int n = integer_exponent(*e.args[1]);
      const PhaseFn b = exact(*e.args[0], st);
      if (n < 0) return PhasePoly(unit_of(b).pow(n));
      if (const auto* p = std::get_if<PhasePoly>(&b)) return p->pow(n);
      const ExpPoly& x = std::get<ExpPoly>(b);
      return normalize(ExpPoly(x.prefactor().pow(n), x.phase() * Coeff(n)));
    }
    case Expr::Kind::Call: {
      if (e.name == "exp") {
        check_arity(e, 1);
        const PhaseFn arg = exact(*e.args[0], st);
        const auto* p = std::get_if<PhasePoly>(&arg);
        if (!p) throw Error(ErrorCode::InvalidArgument, "exp needs a polynomial argument");
        return normalize(ExpPoly::exp(*p));
      }
      if (e.name == "star" || e.name == "bracket") {
        check_arity(e, 2);
        const PhaseFn a = exact(*e.args[0], st), b = exact(*e.args[1], st);
        return normalize(e.name == "star" ? star(a, b) : moyal_bracket(a, b));
      }
      throw Error(ErrorCode::InvalidArgument,
                  "function '" + e.name + "' is not available in exact mode");
    }
  }
  throw Error(ErrorCode::InvalidArgument, "malformed expression");
}

OpPoly oper(const Expr& e, const SymbolTable& st) {
  switch (e.kind) {
    case Expr::Kind::Number: return OpPoly(Coeff(GaussRat(e.number)));
    case Expr::Kind::Imag: return OpPoly(Coeff::i());
    case Expr::Kind::Symbol:
      if (e.name == "qhat") return OpPoly::qhat();
      if (e.name == "phat") return OpPoly::phat();
      if (e.name == kHbar) return OpPoly(Coeff::hbar());
      if (st.params.count(e.name)) return OpPoly(Coeff::symbol(e.name));
      unknown_symbol(e, "operator expressions use qhat and phat");
    case Expr::Kind::Add: return oper(*e.args[0], st) + oper(*e.args[1], st);
    case Expr::Kind::Sub: return oper(*e.args[0], st) - oper(*e.args[1], st);
    case Expr::Kind::Mul: return op_mul(oper(*e.args[0], st), oper(*e.args[1], st));
    case Expr::Kind::Neg: return -oper(*e.args[0], st);
    case Expr::Kind::Div: {
      const OpPoly d = oper(*e.args[1], st);
      const auto it = d.terms().find(Powers{0, 0});
      if (d.terms().size() != 1 || it == d.terms().end() || !it->second.is_single_term())
        throw Error(ErrorCode::NonInvertible, "operator division needs a single-term constant");
      return oper(*e.args[0], st) * it->second.inverse();
    }
    case Expr::Kind::Pow: {
      const int n = integer_exponent(*e.args[1]);
      const OpPoly b = oper(*e.args[0], st);
      if (n >= 0) return op_pow(b, n);
      const auto it = b.terms().find(Powers{0, 0});
      if (b.terms().size() != 1 || it == b.terms().end() || !it->second.is_single_term())
        throw Error(ErrorCode::NonInvertible, "negative powers need a single-term constant");
      return OpPoly(it->second.pow(n));
    }
    case Expr::Kind::Call:
      throw Error(ErrorCode::InvalidArgument,
                  "function '" + e.name + "' is not available in operator mode");
  }
  throw Error(ErrorCode::InvalidArgument, "malformed expression");
}

ClosedFn closed(const Expr& e, const std::map<std::string, cplx>& values) {
  switch (e.kind) {
    case Expr::Kind::Number: return ClosedFn(e.number.get_d());
    case Expr::Kind::Imag: return ClosedFn(cplx(0.0, 1.0));
    case Expr::Kind::Symbol: {
      if (e.name == "q") return ClosedFn::q();
      if (e.name == "p") return ClosedFn::p();
      const auto it = values.find(e.name);
      if (it == values.end()) unknown_symbol(e, "no numeric value bound");
      return ClosedFn(it->second);
    }
    case Expr::Kind::Add: return closed(*e.args[0], values) + closed(*e.args[1], values);
    case Expr::Kind::Sub: return closed(*e.args[0], values) - closed(*e.args[1], values);
    case Expr::Kind::Mul: return closed(*e.args[0], values) * closed(*e.args[1], values);
    case Expr::Kind::Div: return closed(*e.args[0], values) / closed(*e.args[1], values);
    case Expr::Kind::Neg: return -closed(*e.args[0], values);
    case Expr::Kind::Pow:
      return ClosedFn::pow(closed(*e.args[0], values), closed(*e.args[1], values));
    case Expr::Kind::Call: {
      static const std::map<std::string, ClosedFn::Func> funcs = {
          {"exp", ClosedFn::Func::Exp},   {"log", ClosedFn::Func::Log},
          {"ln", ClosedFn::Func::Log},    {"sqrt", ClosedFn::Func::Sqrt},
          {"sin", ClosedFn::Func::Sin},   {"cos", ClosedFn::Func::Cos},
          {"sinh", ClosedFn::Func::Sinh}, {"cosh", ClosedFn::Func::Cosh},
          {"tanh", ClosedFn::Func::Tanh}, {"airy", ClosedFn::Func::Airy},
          {"Ai", ClosedFn::Func::Airy},   {"airy_prime", ClosedFn::Func::AiryPrime}};
      const auto it = funcs.find(e.name);
      if (it == funcs.end())
        throw Error(ErrorCode::InvalidArgument,
                    "function '" + e.name + "' is not available in numeric mode");
      check_arity(e, 1);
      return ClosedFn::apply(it->second, closed(*e.args[0], values));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "malformed expression");
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

PhaseFn lower_exact(const ExprPtr& e, const SymbolTable& symbols) {
  return normalize(exact(*e, symbols));
}

PhasePoly lower_poly(const ExprPtr& e, const SymbolTable& symbols) {
  const PhaseFn f = lower_exact(e, symbols);
  if (const auto* p = std::get_if<PhasePoly>(&f)) return *p;
  throw Error(ErrorCode::InvalidArgument, "expected a polynomial, got an exponential");
}

ExpPoly lower_exp_poly(const ExprPtr& e, const SymbolTable& symbols) {
  return as_exp(lower_exact(e, symbols));
}

Coeff lower_coeff(const ExprPtr& e, const SymbolTable& symbols) {
  const PhasePoly p = lower_poly(e, symbols);
  if (!p.is_constant())
    throw Error(ErrorCode::InvalidArgument, "expected a constant, got " + to_string(p));
  return p.constant_term();
}

OpPoly lower_operator(const ExprPtr& e, const SymbolTable& symbols) { return oper(*e, symbols); }

ClosedFn lower_closed(const ExprPtr& e, const std::map<std::string, cplx>& values) {
  return closed(*e, values);
}

std::string to_string(const OpPoly& a) {
  std::vector<std::pair<Powers, const Coeff*>> order;
  for (const auto& [pw, c] : a.terms()) order.emplace_back(pw, &c);
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    const int dx = x.first.q + x.first.p, dy = y.first.q + y.first.p;
    if (dx != dy) return dx > dy;
    return x.first.q > y.first.q;
  });
  std::vector<std::pair<Coeff, std::vector<std::string>>> terms;
  for (const auto& [pw, c] : order) {
    std::vector<std::string> extras;
    if (pw.q) extras.push_back(power_string("qhat", pw.q));
    if (pw.p) extras.push_back(power_string("phat", pw.p));
    terms.emplace_back(*c, std::move(extras));
  }
  return format_sum(terms);
}

}  // namespace psq
