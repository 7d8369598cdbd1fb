#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "psq/cli.hpp"
#include "psq/ct.hpp"
#include "psq/error.hpp"
#include "psq/expr.hpp"
#include "psq/format.hpp"
#include "psq/gridlab.hpp"
#include "psq/intertwine.hpp"
#include "psq/weyl.hpp"

namespace psq::cli {
namespace {

using json = nlohmann::ordered_json;

struct Outcome {
  json result;
  json residuals = json::object();
  json tolerance = nullptr;
  bool pass = true;
  std::string text;
};

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::string cnum(cplx z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::fabs(z.imag())) + "i";
}

std::string str(const PhaseFn& f) {
  return std::visit([](const auto& x) { return to_string(x); }, f);
}

bool is_zero(const PhaseFn& f) {
  return std::visit([](const auto& x) { return x.is_zero(); }, f);
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = n == 1 ? a : a + (b - a) * k / (n - 1);
  return out;
}

// All option values collected by CLI11; one struct so that subcommands share flags.
struct Opts {
  std::string format = "text";
  std::vector<std::string> params;
  std::string A, B;
  std::string Q, P, F, G, u, f, g, L, H, H0, H1, V0, V1, W, lambda, nu, expect, reference;
  std::string a, b, c, d;
  std::string gf = "gauge";
  std::string m = "1";
  std::string branch = "principal";
  std::string out, F_csv, G_csv, W_csv;
  std::string backend = "omp";
  double qmin = -6, qmax = 6, pmin = -6, pmax = 6, hbar = 1.0, E = 0.0, margin = 0.15;
  double eta = 1.0, band_floor = 1e-7, airy_pmin = -40, airy_pmax = 20;
  double tol = -1.0, ref_tol = 1e-10;
  int n = 16, nq = 128, np = 128, modes = 256;
  bool no_taper = false, no_symbol = false;
};

class Context {
 public:
  explicit Context(const Opts& o) {
    for (const auto& decl : o.params) {
      const auto eq = decl.find('=');
      const std::string name = decl.substr(0, eq);
      if (name.empty() || name == "q" || name == "p" || name == "i" || name == kHbar)
        throw Error(ErrorCode::InvalidArgument, "invalid parameter name '" + name + "'");
      symbols_.params.insert(name);
      if (eq != std::string::npos) {
        const Coeff v = lower_coeff(parse_expr(decl.substr(eq + 1)), {});
        exact_[name] = v;
        values_[name] = v.evaluate({{kHbar, o.hbar}});
      }
    }
    values_[kHbar] = o.hbar;
  }

  PhaseFn exact(const std::string& text) const {
    PhaseFn f = lower_exact(parse_expr(text), symbols_);
    for (const auto& [name, v] : exact_)
      f = std::visit([&](const auto& x) -> PhaseFn { return x.substitute_symbol(name, v); }, f);
    if (const auto* e = std::get_if<ExpPoly>(&f); e && e->phase().is_zero()) return e->prefactor();
    return f;
  }
  PhasePoly poly(const std::string& text) const {
    const PhaseFn f = exact(text);
    if (const auto* p = std::get_if<PhasePoly>(&f)) return *p;
    throw Error(ErrorCode::InvalidArgument, "expected a polynomial: " + text);
  }
  ExpPoly exp_poly(const std::string& text) const {
    const PhaseFn f = exact(text);
    if (const auto* p = std::get_if<PhasePoly>(&f)) return ExpPoly(*p, PhasePoly());
    return std::get<ExpPoly>(f);
  }
  Coeff coeff(const std::string& text) const {
    const PhasePoly p = poly(text);
    if (!p.is_constant()) throw Error(ErrorCode::InvalidArgument, "expected a constant: " + text);
    return p.constant_term();
  }
  OpPoly op(const std::string& text) const {
    OpPoly a = lower_operator(parse_expr(text), symbols_);
    for (const auto& [name, v] : exact_) {
      OpPoly b;
      for (const auto& [pw, c] : a.terms()) b.add_term(pw, c.substitute(name, v));
      a = b;
    }
    return a;
  }
  ClosedFn closed(const std::string& text, const std::map<std::string, cplx>& extra = {}) const {
    auto vals = values_;
    for (const auto& [k, v] : extra) vals[k] = v;
    return lower_closed(parse_expr(text), vals);
  }
  cplx number(const std::string& text) const {
    const auto v = closed(text).constant_value();
    if (!v) throw Error(ErrorCode::InvalidArgument, "expected a numeric constant: " + text);
    return *v;
  }
  const std::map<std::string, cplx>& values() const { return values_; }

 private:
  SymbolTable symbols_;
  std::map<std::string, Coeff> exact_;
  std::map<std::string, cplx> values_;
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw CLI::RequiredError(flag);
}

GridSpec grid_spec(const Opts& o) {
  return {o.nq, o.np, o.qmin, o.qmax, o.pmin, o.pmax, o.hbar};
}

GridOptions grid_options(const Opts& o) {
  GridOptions g;
  g.margin = o.margin;
  g.taper = !o.no_taper;
  g.backend = o.backend == "serial" ? Backend::Serial : Backend::OpenMP;
  return g;
}

GridFn grid_input(const Context& ctx, const Opts& o, const std::string& expr,
                  const std::string& csv, const char* flag) {
  if (!csv.empty()) return read_csv_file(csv);
  require(expr, flag);
  return GridFn::sample(grid_spec(o), ctx.closed(expr));
}

json grid_json(const GridSpec& s) {
  return {{"nq", s.nq}, {"np", s.np}, {"qmin", s.qmin}, {"qmax", s.qmax},
          {"pmin", s.pmin}, {"pmax", s.pmax}, {"hbar", s.hbar}};
}

// ---------------------------------------------------------------------------

Outcome cmd_star(const Context& ctx, const Opts& o, bool bracket) {
  const PhaseFn a = ctx.exact(o.A), b = ctx.exact(o.B);
  PhaseFn r = bracket ? moyal_bracket(a, b) : star(a, b);
  if (const auto* e = std::get_if<ExpPoly>(&r); e && e->phase().is_zero()) r = e->prefactor();
  Outcome out;
  out.result = str(r);
  out.text = str(r);
  return out;
}

Outcome cmd_quantize(const Context& ctx, const Opts& o) {
  Outcome out;
  out.text = to_string(quantize(ctx.poly(o.A)));
  out.result = out.text;
  return out;
}

Outcome cmd_dequantize(const Context& ctx, const Opts& o) {
  Outcome out;
  out.text = to_string(dequantize(ctx.op(o.A)));
  out.result = out.text;
  return out;
}

Outcome cmd_transform(const Context& ctx, const Opts& o) {
  require(o.u, "--u");
  GeneratingFn F;
  if (o.gf == "gauge") {
    require(o.f, "--f");
    require(o.lambda, "--lambda");
    F = GaugeGF{ctx.poly(o.f), ctx.coeff(o.lambda)};
  } else if (o.gf == "linear") {
    F = LinearGF{{ctx.coeff(o.a), ctx.coeff(o.b), ctx.coeff(o.c), ctx.coeff(o.d)}};
  } else if (o.gf == "interchange") {
    F = InterchangeGF{};
  } else if (o.gf == "cubic") {
    require(o.nu, "--nu");
    F = CubicGaugeGF{ctx.coeff(o.nu)};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown generating function kind: " + o.gf);
  }
  const PhasePoly image = gauge_transform_known_ct(F, ctx.poly(o.u));
  Outcome out;
  out.result = {{"gf", to_string(gf_exp_poly(F))}, {"image", to_string(image)}};
  out.text = "F = " + to_string(gf_exp_poly(F)) + "\nF*u*F^-1 = " + to_string(image);
  return out;
}

Outcome cmd_verify_gf(const Context& ctx, const Opts& o) {
  require(o.F, "--F");
  require(o.Q, "--Q");
  require(o.P, "--P");
  const auto [rq, rp] = verify_gf_relation(ctx.exp_poly(o.F), ctx.poly(o.Q), ctx.poly(o.P));
  Outcome out;
  out.residuals = {{"q", to_string(rq)}, {"p", to_string(rp)}};
  out.tolerance = 0;
  out.pass = rq.is_zero() && rp.is_zero();
  out.result = out.pass;
  out.text = "F*q - Q*F = " + to_string(rq) + "\nF*p - P*F = " + to_string(rp);
  return out;
}

Outcome cmd_canonicity(const Context& ctx, const Opts& o) {
  require(o.Q, "--Q");
  require(o.P, "--P");
  const CanonicalPair ct{ctx.poly(o.Q), ctx.poly(o.P)};
  const PhasePoly r = canonicity_residual(ct);
  Outcome out;
  out.result = to_string(moyal_bracket(ct.Q, ct.P));
  out.residuals = {{"canonicity", to_string(r)}};
  out.tolerance = 0;
  out.pass = r.is_zero();
  out.text = "{Q,P} = " + to_string(moyal_bracket(ct.Q, ct.P)) + "\nresidual " + to_string(r);
  return out;
}

Branch parse_branch(const std::string& s) {
  if (s == "principal") return Branch::Principal;
  if (s == "plus") return Branch::Plus;
  if (s == "minus") return Branch::Minus;
  throw Error(ErrorCode::InvalidArgument, "branch must be principal, plus or minus");
}

Outcome cmd_point_solve(const Context& ctx, const Opts& o) {
  require(o.Q, "--Q");
  const cplx m = ctx.number(o.m);
  const double tol = o.tol < 0 ? 1e-10 : o.tol;
  const auto qs = linspace(o.qmin, o.qmax, o.n);
  InverseOptions io;
  io.branch = parse_branch(o.branch);
  io.tolerance = tol;
  const auto sol = point_ct_inverse(ctx.closed(o.Q), m, qs, io);

  std::optional<ClosedFn> ref;
  if (!o.reference.empty()) ref = ctx.closed(o.reference, {{"m", m}});

  Outcome out;
  out.result = json::array();
  std::ostringstream text;
  text << std::setw(14) << "q" << std::setw(22) << "Re f" << std::setw(22) << "Im f"
       << std::setw(18) << "residual";
  if (ref) text << std::setw(18) << "|f - ref|";
  text << "\n";
  double max_res = 0.0, max_ref = 0.0;
  for (const auto& s : sol) {
    json row = {{"q", s.q}, {"f", cjson(s.f)}, {"residual", s.residual},
                {"iterations", s.iterations}};
    max_res = std::max(max_res, s.residual);
    text << std::setw(14) << num(s.q) << std::setw(22) << num(s.f.real()) << std::setw(22)
         << num(s.f.imag()) << std::setw(18) << num(s.residual);
    if (ref) {
      const double dev = std::abs(s.f - (*ref)(s.q));
      row["reference_deviation"] = dev;
      max_ref = std::max(max_ref, dev);
      text << std::setw(18) << num(dev);
    }
    text << "\n";
    out.result.push_back(row);
  }
  out.residuals["implicit_equation"] = max_res;
  out.tolerance = tol;
  out.pass = max_res <= tol;
  if (ref) {
    out.residuals["reference"] = max_ref;
    out.pass = out.pass && max_ref <= o.ref_tol;
  }
  text << "max residual " << num(max_res);
  if (ref) text << ", max reference deviation " << num(max_ref);
  out.text = text.str();
  return out;
}

Outcome cmd_point_forward(const Context& ctx, const Opts& o) {
  require(o.f, "--f");
  const cplx m = ctx.number(o.m);
  const double tol = o.tol < 0 ? 1e-8 : o.tol;
  const auto qs = linspace(o.qmin, o.qmax, o.n);
  const ClosedFn f = ctx.closed(o.f, {{"m", m}});
  const ClosedFn g = o.g.empty() ? ClosedFn(0.0) : ctx.closed(o.g, {{"m", m}});
  const PointCT ct = point_ct_forward(f, g, m, qs, o.hbar);

  Outcome out;
  out.result = json::array();
  std::ostringstream text;
  text << std::setw(14) << "q" << std::setw(36) << "upsilon" << std::setw(36) << "Q"
       << std::setw(36) << "Qtilde" << std::setw(36) << "chi" << "\n";
  for (double q : qs) {
    const PointSample s = ct.at_parameter(q);
    out.result.push_back({{"q", q},
                          {"upsilon", cjson(s.upsilon)},
                          {"Q", cjson(s.Q)},
                          {"Qtilde", cjson(s.Qtilde)},
                          {"chi", cjson(s.chi)}});
    text << std::setw(14) << num(q) << std::setw(36) << cnum(s.upsilon) << std::setw(36)
         << cnum(s.Q) << std::setw(36) << cnum(s.Qtilde) << std::setw(36) << cnum(s.chi) << "\n";
  }
  std::vector<double> xs;
  for (double q : qs) {
    const cplx u = ct.at_parameter(q).upsilon;
    if (std::fabs(u.imag()) < 1e-12) xs.push_back(u.real());
  }
  if (!xs.empty()) {
    const double r = point_canonicity_residual(ct, xs);
    out.residuals["canonicity"] = r;
    out.pass = r <= tol;
    text << "canonicity residual " << num(r);
  } else {
    out.residuals["canonicity"] = nullptr;
    text << "canonicity not checked: no real upsilon samples";
  }
  out.tolerance = tol;
  out.text = text.str();
  return out;
}

Outcome cmd_linear(const Context& ctx, const Opts& o) {
  require(o.a, "--a");
  require(o.b, "--b");
  require(o.c, "--c");
  require(o.d, "--d");
  const LinearCT L{ctx.coeff(o.a), ctx.coeff(o.b), ctx.coeff(o.c), ctx.coeff(o.d)};
  require_symplectic(L);
  const CanonicalPair pair = linear_pair(L);
  Outcome out;
  out.result = json::object();
  out.result["Q"] = to_string(pair.Q);
  out.result["P"] = to_string(pair.P);
  std::string text = "Q = " + to_string(pair.Q) + "\nP = " + to_string(pair.P);
  const PhasePoly can = canonicity_residual(pair);
  out.residuals["canonicity"] = to_string(can);
  out.pass = can.is_zero();
  try {
    const ExpPoly F = linear_gf(L);
    const auto [rq, rp] = verify_gf_relation(F, pair.Q, pair.P);
    out.result["gf"] = to_string(F);
    out.residuals["gf_q"] = to_string(rq);
    out.residuals["gf_p"] = to_string(rp);
    out.pass = out.pass && rq.is_zero() && rp.is_zero();
    text += "\nF = " + to_string(F) + "\nresiduals " + to_string(rq) + ", " + to_string(rp);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularCayley) throw;
    out.result["gf"] = nullptr;
    text += "\nF: none (a + d + 2 = 0)";
  }
  try {
    const LinearDecomposition dec = linear_decompose(L);
    out.result["decomposition"] = {
        {"alpha", to_string(dec.alpha)}, {"beta", to_string(dec.beta)}, {"k", to_string(dec.k)}};
    text += "\nalpha = " + to_string(dec.alpha) + ", beta = " + to_string(dec.beta) +
            ", k = " + to_string(dec.k);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateDecomposition) throw;
    out.result["decomposition"] = nullptr;
  }
  if (!o.u.empty()) {
    const std::string image = to_string(linear_act(L, ctx.poly(o.u)));
    out.result["image"] = image;
    text += "\nu(Q, P) = " + image;
  }
  out.tolerance = 0;
  out.text = text;
  return out;
}

Outcome cmd_intertwine(const Context& ctx, const Opts& o) {
  require(o.L, "--L");
  require(o.H0, "--H0");
  require(o.H1, "--H1");
  const PhaseFn r = intertwine_residual(ctx.exact(o.L), ctx.poly(o.H0), ctx.poly(o.H1));
  Outcome out;
  out.residuals["intertwine"] = str(r);
  out.tolerance = 0;
  out.pass = is_zero(r);
  out.result = out.pass;
  out.text = "L*H0 - H1*L = " + str(r);
  return out;
}

Outcome cmd_twopotentials(const Context& ctx, const Opts& o) {
  require(o.L, "--L");
  require(o.V0, "--V0");
  require(o.V1, "--V1");
  const PhaseFn r = twopotentials_residual(ctx.exact(o.L), ctx.poly(o.V0), ctx.poly(o.V1));
  Outcome out;
  out.residuals["twopotentials"] = str(r);
  out.tolerance = 0;
  out.pass = is_zero(r);
  out.result = out.pass;
  out.text = "residual " + str(r);
  return out;
}

Outcome cmd_genvalue(const Context& ctx, const Opts& o) {
  require(o.H, "--H");
  const double tol = o.tol < 0 ? 1e-6 : o.tol;
  const GridFn W = grid_input(ctx, o, o.W, o.W_csv, "--W");
  const PhasePoly H = ctx.poly(o.H);
  const GridOptions go = grid_options(o);
  const GridResidual r = genvalue_residual(H, W, o.E, go, ctx.values());
  if (!o.out.empty()) write_csv_file(o.out, star_poly_grid(H, W, go, ctx.values()));
  Outcome out;
  out.result = {{"grid", grid_json(W.spec())}, {"degenerate_input", r.degenerate_input}};
  out.residuals["genvalue"] = r.value;
  out.tolerance = tol;
  out.pass = !r.degenerate_input && r.value <= tol;
  out.text = "||H*W - E W|| / ||W|| = " + num(r.value) +
             (r.degenerate_input ? " (degenerate input)" : "");
  return out;
}

Outcome cmd_airy_delta(const Context&, const Opts& o) {
  const double tol = o.tol < 0 ? 1e-6 : o.tol;
  AiryDeltaOptions ao;
  ao.eta = o.eta;
  ao.band_floor = o.band_floor;
  ao.apply_symbol = !o.no_symbol;
  ao.pmin = o.airy_pmin;
  ao.pmax = o.airy_pmax;
  const AiryDeltaResult r = airy_to_delta_fourier_check(o.hbar, o.E, o.modes, ao);
  Outcome out;
  out.result = {{"band_modes", r.band_modes}, {"kappa_max", r.kappa_max}, {"mean", cjson(r.mean)}};
  out.residuals["flatness"] = r.deviation;
  out.tolerance = tol;
  out.pass = r.deviation <= tol;
  out.text = "flatness deviation " + num(r.deviation) + " over " +
             std::to_string(r.band_modes) + " modes (|kappa| <= " + num(r.kappa_max) +
             "), mean " + cnum(r.mean);
  return out;
}

Outcome cmd_grid_star(const Context& ctx, const Opts& o) {
  const GridFn F = grid_input(ctx, o, o.F, o.F_csv, "--F");
  const GridFn G = grid_input(ctx, o, o.G, o.G_csv, "--G");
  const GridOptions go = grid_options(o);
  const GridFn FG = general_star_grid(F, G, go);
  if (!o.out.empty()) write_csv_file(o.out, FG);
  Outcome out;
  out.result = {{"grid", grid_json(FG.spec())}};
  out.text = "F*G computed on " + std::to_string(FG.spec().nq) + "x" +
             std::to_string(FG.spec().np) + " grid";
  if (!o.expect.empty()) {
    const double tol = o.tol < 0 ? 1e-8 : o.tol;
    const GridFn ref = GridFn::sample(FG.spec(), ctx.closed(o.expect));
    const double r = interior_relative_norm(FG - ref, ref, go);
    out.residuals["expected"] = r;
    out.tolerance = tol;
    out.pass = r <= tol;
    out.text += "\n||F*G - expected|| / ||expected|| = " + num(r);
  }
  return out;
}

json inputs_of(const CLI::App& app, const CLI::App* sub) {
  json in = json::object();
  auto add = [&](const CLI::Option* opt) {
    if (!opt->count()) return;
    const std::string& name = opt->get_single_name();
    if (name == "help") return;
    const auto& res = opt->results();
    if (opt->get_expected_max() == 0 || res.empty())
      in[name] = true;
    else if (res.size() == 1 && opt->get_expected_max() == 1)
      in[name] = res.front();
    else
      in[name] = res;
  };
  for (const auto* opt : app.get_options()) add(opt);
  for (const auto* opt : sub->get_options()) add(opt);
  return in;
}

json error_json(const Error& e) {
  json j = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) {
    j["line"] = s->line();
    j["col"] = s->col();
    j["expected"] = s->expected();
  }
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Opts o;
  CLI::App app{"Exact and numerical phase-space quantum mechanics"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--param", o.params, "declare a parameter: name or name=value")
      ->allow_extra_args(false);

  auto sub = [&](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  auto grid_flags = [&](CLI::App* s) {
    s->add_option("--nq", o.nq, "grid points in q");
    s->add_option("--np", o.np, "grid points in p");
    s->add_option("--qmin", o.qmin);
    s->add_option("--qmax", o.qmax);
    s->add_option("--pmin", o.pmin);
    s->add_option("--pmax", o.pmax);
    s->add_option("--margin", o.margin, "excluded fraction per side");
    s->add_flag("--no-taper", o.no_taper);
    s->add_option("--backend", o.backend)->check(CLI::IsMember({"omp", "serial"}));
    s->add_option("--out", o.out, "write the result grid as CSV");
  };

  CLI::App* s_star = sub("star", "exact star product A*B");
  s_star->add_option("A", o.A)->required();
  s_star->add_option("B", o.B)->required();
  CLI::App* s_bracket = sub("bracket", "Moyal bracket A*B - B*A");
  s_bracket->add_option("A", o.A)->required();
  s_bracket->add_option("B", o.B)->required();
  CLI::App* s_quant = sub("quantize", "Weyl quantization to normal-ordered qhat, phat");
  s_quant->add_option("F", o.A)->required();
  CLI::App* s_dequant = sub("dequantize", "Weyl symbol of an operator in qhat, phat");
  s_dequant->add_option("A", o.A)->required();

  CLI::App* s_transform = sub("transform", "apply a known generating function to u");
  s_transform->add_option("--gf", o.gf)->check(
      CLI::IsMember({"gauge", "linear", "interchange", "cubic"}));
  s_transform->add_option("--u", o.u);
  s_transform->add_option("--f", o.f);
  s_transform->add_option("--lambda", o.lambda);
  s_transform->add_option("--nu", o.nu);
  s_transform->add_option("--a", o.a);
  s_transform->add_option("--b", o.b);
  s_transform->add_option("--c", o.c);
  s_transform->add_option("--d", o.d);

  CLI::App* s_verify = sub("verify-gf", "check F*q = Q*F and F*p = P*F");
  s_verify->add_option("--F", o.F);
  s_verify->add_option("--Q", o.Q);
  s_verify->add_option("--P", o.P);

  CLI::App* s_canon = sub("canonicity", "check {Q,P} = i hbar");
  s_canon->add_option("--Q", o.Q);
  s_canon->add_option("--P", o.P);

  CLI::App* s_psolve = sub("point-solve", "solve Q(q + m f/2) = q - m f/2 for f");
  s_psolve->add_option("--Q", o.Q);
  s_psolve->add_option("--m", o.m);
  s_psolve->add_option("--qmin", o.qmin);
  s_psolve->add_option("--qmax", o.qmax);
  s_psolve->add_option("--n", o.n);
  s_psolve->add_option("--branch", o.branch);
  s_psolve->add_option("--hbar", o.hbar);
  s_psolve->add_option("--reference", o.reference, "closed form for f in q and m");
  s_psolve->add_option("--ref-tol", o.ref_tol);
  s_psolve->add_option("--tol", o.tol);

  CLI::App* s_pforward = sub("point-forward", "point transformation from f, g");
  s_pforward->add_option("--f", o.f);
  s_pforward->add_option("--g", o.g);
  s_pforward->add_option("--m", o.m);
  s_pforward->add_option("--qmin", o.qmin);
  s_pforward->add_option("--qmax", o.qmax);
  s_pforward->add_option("--n", o.n);
  s_pforward->add_option("--hbar", o.hbar);
  s_pforward->add_option("--tol", o.tol);

  CLI::App* s_linear = sub("linear", "linear transformation, its generating function and factors");
  s_linear->add_option("--a", o.a);
  s_linear->add_option("--b", o.b);
  s_linear->add_option("--c", o.c);
  s_linear->add_option("--d", o.d);
  s_linear->add_option("--u", o.u);

  CLI::App* s_inter = sub("intertwine", "check L*H0 = H1*L");
  s_inter->add_option("--L", o.L);
  s_inter->add_option("--H0", o.H0);
  s_inter->add_option("--H1", o.H1);

  CLI::App* s_two = sub("twopotentials", "intertwining between potentials V0 and V1");
  s_two->add_option("--L", o.L);
  s_two->add_option("--V0", o.V0);
  s_two->add_option("--V1", o.V1);

  CLI::App* s_gen = sub("genvalue", "grid residual of H*W = E W");
  s_gen->add_option("--H", o.H);
  s_gen->add_option("--W", o.W, "closed form in q, p");
  s_gen->add_option("--W-csv", o.W_csv);
  s_gen->add_option("--E", o.E);
  s_gen->add_option("--hbar", o.hbar);
  s_gen->add_option("--tol", o.tol);
  grid_flags(s_gen);

  CLI::App* s_airy = sub("airy-delta", "Fourier flatness of the Airy to delta map");
  s_airy->add_option("--hbar", o.hbar);
  s_airy->add_option("--E", o.E);
  s_airy->add_option("--modes", o.modes);
  s_airy->add_option("--eta", o.eta);
  s_airy->add_option("--pmin", o.airy_pmin);
  s_airy->add_option("--pmax", o.airy_pmax);
  s_airy->add_option("--band-floor", o.band_floor);
  s_airy->add_flag("--no-symbol", o.no_symbol, "skip the cubic symbol (negative control)");
  s_airy->add_option("--tol", o.tol);

  CLI::App* s_gstar = sub("grid-star", "star product of two grid functions");
  s_gstar->add_option("--F", o.F);
  s_gstar->add_option("--G", o.G);
  s_gstar->add_option("--F-csv", o.F_csv);
  s_gstar->add_option("--G-csv", o.G_csv);
  s_gstar->add_option("--expect", o.expect, "closed form to compare against");
  s_gstar->add_option("--hbar", o.hbar);
  s_gstar->add_option("--tol", o.tol);
  grid_flags(s_gstar);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  const bool as_json = o.format == "json";
  json report = {{"command", command}, {"inputs", inputs_of(app, chosen)}};

  auto fail = [&](json error, const std::string& message) {
    if (as_json) {
      report["result"] = nullptr;
      report["residuals"] = nullptr;
      report["tolerance"] = nullptr;
      report["pass"] = nullptr;
      report["error"] = std::move(error);
      out << report.dump(2) << "\n";
    }
    err << "psq " << command << ": " << message << "\n";
    return kExitError;
  };

  Outcome res;
  try {
    const Context ctx(o);
    if (command == "star") res = cmd_star(ctx, o, false);
    else if (command == "bracket") res = cmd_star(ctx, o, true);
    else if (command == "quantize") res = cmd_quantize(ctx, o);
    else if (command == "dequantize") res = cmd_dequantize(ctx, o);
    else if (command == "transform") res = cmd_transform(ctx, o);
    else if (command == "verify-gf") res = cmd_verify_gf(ctx, o);
    else if (command == "canonicity") res = cmd_canonicity(ctx, o);
    else if (command == "point-solve") res = cmd_point_solve(ctx, o);
    else if (command == "point-forward") res = cmd_point_forward(ctx, o);
    else if (command == "linear") res = cmd_linear(ctx, o);
    else if (command == "intertwine") res = cmd_intertwine(ctx, o);
    else if (command == "twopotentials") res = cmd_twopotentials(ctx, o);
    else if (command == "genvalue") res = cmd_genvalue(ctx, o);
    else if (command == "airy-delta") res = cmd_airy_delta(ctx, o);
    else res = cmd_grid_star(ctx, o);
  } catch (const CLI::RequiredError& e) {
    return fail({{"code", "MissingOption"}, {"message", e.what()}}, e.what());
  } catch (const Error& e) {
    return fail(error_json(e), e.what());
  }

  if (as_json) {
    report["result"] = res.result;
    report["residuals"] = res.residuals;
    report["tolerance"] = res.tolerance;
    report["pass"] = res.pass;
    out << report.dump(2) << "\n";
  } else {
    out << res.text << "\n";
    if (!res.pass) out << "FAIL\n";
  }
  return res.pass ? kExitOk : kExitFailed;
}

}  // namespace psq::cli
