#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "psq/ct.hpp"
#include "psq/error.hpp"

namespace psq {
namespace {

constexpr cplx kI{0.0, 1.0};

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string at_point(double q) {
  std::ostringstream os;
  os.precision(17);
  os << " at q = " << q;
  return os.str();
}

// Safeguarded Newton on a complex scalar equation. Returns the iterate and
// its residual; stops early when the residual drops below tol.
struct NewtonResult {
  cplx x;
  double residual;
  int iterations;
  bool converged;
};

template <class F, class DF>
NewtonResult newton(F&& fn, DF&& dfn, cplx x, int max_iter, double tol) {
  cplx fx = fn(x);
  double r = finite(fx) ? std::abs(fx) : INFINITY;
  int it = 0;
  for (; it < max_iter && r > tol; ++it) {
    const cplx d = dfn(x);
    if (!finite(d) || d == 0.0) break;
    cplx step = fx / d;
    bool improved = false;
    for (int halve = 0; halve < 40; ++halve) {
      const cplx xn = x - step;
      const cplx fn_ = fn(xn);
      const double rn = finite(fn_) ? std::abs(fn_) : INFINITY;
      if (rn < r) {
        x = xn;
        fx = fn_;
        r = rn;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  // a couple of polishing steps once inside tolerance
  for (int k = 0; k < 2 && r <= tol; ++k) {
    const cplx d = dfn(x);
    if (!finite(d) || d == 0.0) break;
    const cplx xn = x - fx / d;
    const cplx fn_ = fn(xn);
    if (!finite(fn_) || std::abs(fn_) > r) break;
    x = xn;
    fx = fn_;
    r = std::abs(fn_);
  }
  return {x, r, it, r <= tol};
}

}  // namespace

PointCT::PointCT(ClosedFn f, ClosedFn g, cplx m, double hbar)
    : f_(std::move(f)), g_(std::move(g)), m_(m), hbar_(hbar) {
  if (f_.depends_on(Var::P) || g_.depends_on(Var::P))
    throw Error(ErrorCode::NotFunctionOfQ, "point data must depend on q only");
  df_ = f_.d_q();
  d2f_ = df_.d_q();
  dg_ = g_.d_q();
}

PointSample PointCT::at_parameter(cplx q) const {
  const cplx fv = f_(q), df = df_(q), d2f = d2f_(q);
  const cplx den = 2.0 - m_ * df;
  const cplx Qt = (2.0 + m_ * df) / den;
  const cplx dR = 4.0 * m_ * d2f / (den * den);
  const cplx dups = 1.0 + m_ * df / 2.0;
  const cplx dQt = dR / dups;
  const cplx chi = m_ / 2.0 * (1.0 + Qt) * dg_(q) + kI * hbar_ * m_ / 4.0 * dQt * df;
  return {q, q + m_ * fv / 2.0, q - m_ * fv / 2.0, Qt, chi};
}

PointSample PointCT::at(cplx x, std::optional<cplx> guess) const {
  auto fn = [&](cplx q) { return q + m_ * f_(q) / 2.0 - x; };
  auto dfn = [&](cplx q) { return 1.0 + m_ * df_(q) / 2.0; };
  const double tol = 1e-13 * std::max(1.0, std::abs(x));
  NewtonResult r = newton(fn, dfn, guess.value_or(x), 100, tol);
  if (!r.converged) {
    std::ostringstream os;
    os << "upsilon inversion did not converge at x = " << x << ", residual " << r.residual;
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return at_parameter(r.x);
}

cplx PointCT::P(cplx x, cplx p) const {
  const PointSample s = at(x);
  return s.Qtilde * p + s.chi;
}

PointCT point_ct_forward(const ClosedFn& f, const ClosedFn& g, cplx m,
                         const std::vector<double>& samples, double hbar) {
  PointCT ct(f, g, m, hbar);
  const ClosedFn df = f.d_q();
  for (double q : samples) {
    const cplx den = 2.0 - m * df(q);
    if (!finite(den) || std::abs(den) < 1e-12)
      throw Error(ErrorCode::SingularDenominator, "2 - m f' vanishes" + at_point(q));
  }
  return ct;
}

double point_canonicity_residual(const PointCT& ct, const std::vector<double>& samples, double h) {
  double worst = 0.0;
  for (double x : samples) {
    const PointSample s = ct.at(x);
    auto Qat = [&](double dx) { return ct.at(x + dx, s.q + dx).Q; };
    const cplx dQ = (-Qat(2 * h) + 8.0 * Qat(h) - 8.0 * Qat(-h) + Qat(-2 * h)) / (12.0 * h);
    worst = std::max(worst, std::abs(dQ * s.Qtilde - 1.0));
  }
  return worst;
}

std::vector<InverseSample> point_ct_inverse(const ClosedFn& Q, cplx m,
                                            const std::vector<double>& samples,
                                            const InverseOptions& opts) {
  if (m == 0.0) throw Error(ErrorCode::InvalidArgument, "m must be nonzero");
  if (Q.depends_on(Var::P)) throw Error(ErrorCode::NotFunctionOfQ, "Q must depend on q only");
  const ClosedFn dQ = Q.d_q();
  const double scale = 1.0 / std::abs(m);
  std::vector<InverseSample> out;
  for (double q : samples) {
    auto fn = [&](cplx f) { return Q(q + m * f / 2.0) - q + m * f / 2.0; };
    auto dfn = [&](cplx f) { return (dQ(q + m * f / 2.0) + 1.0) * m / 2.0; };

    std::vector<cplx> starts;
    if (opts.guess) {
      starts.push_back(opts.guess(q));
    } else {
      for (double re : {0.0, 1.0, -1.0, 2.0, -2.0})
        for (double im : {0.0, 1.0, -1.0, 2.0, -2.0}) starts.push_back(cplx(re, im) * scale);
    }

    std::vector<NewtonResult> roots;
    NewtonResult best_failure{0.0, INFINITY, 0, false};
    for (cplx s : starts) {
      NewtonResult r = newton(fn, dfn, s, opts.max_iterations, opts.tolerance);
      if (!r.converged) {
        if (r.residual < best_failure.residual) best_failure = r;
        continue;
      }
      const bool dup = std::any_of(roots.begin(), roots.end(), [&](const NewtonResult& o) {
        return std::abs(o.x - r.x) <= 1e-8 * (1.0 + std::abs(r.x));
      });
      if (!dup) roots.push_back(r);
    }
    if (roots.empty()) {
      std::ostringstream os;
      os.precision(17);
      os << "no convergence at q = " << q << ", best residual " << best_failure.residual;
      throw Error(ErrorCode::NoConvergence, os.str());
    }

    auto plus_less = [](const NewtonResult& a, const NewtonResult& b) {
      if (std::abs(a.x.imag() - b.x.imag()) > 1e-9 * (1.0 + std::abs(a.x)))
        return a.x.imag() < b.x.imag();
      return a.x.real() < b.x.real();
    };
    const NewtonResult* pick = nullptr;
    switch (opts.branch) {
      case Branch::Plus: pick = &*std::max_element(roots.begin(), roots.end(), plus_less); break;
      case Branch::Minus: pick = &*std::min_element(roots.begin(), roots.end(), plus_less); break;
      case Branch::Principal:
        pick = &*std::min_element(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
          const double ma = std::abs(a.x), mb = std::abs(b.x);
          if (std::abs(ma - mb) > 1e-9 * (1.0 + ma)) return ma < mb;
          return plus_less(b, a);
        });
        break;
    }
    out.push_back({q, pick->x, pick->residual, pick->iterations});
  }
  return out;
}

namespace {

cplx g_integrand(const ClosedFn& df_fn, const ClosedFn& d2f_fn, cplx m, double q, double hbar) {
  const cplx df = df_fn(q), d2f = d2f_fn(q);
  const cplx den = 2.0 - m * df;
  const cplx dups = 1.0 + m * df / 2.0;
  if (!finite(den) || std::abs(den) < 1e-14 || std::abs(dups) < 1e-14)
    throw Error(ErrorCode::SingularIntegrand, "singular point-transformation data" + at_point(q));
  const cplx Qt = (2.0 + m * df) / den;
  const cplx dQt = 4.0 * m * d2f / (den * den) / dups;
  if (std::abs(1.0 + Qt) < 1e-14)
    throw Error(ErrorCode::SingularIntegrand, "1 + Qtilde vanishes" + at_point(q));
  const cplx v = -kI * hbar / 2.0 * dQt * df / (1.0 + Qt);
  if (!finite(v)) throw Error(ErrorCode::SingularIntegrand, "non-finite integrand" + at_point(q));
  return v;
}

}  // namespace

cplx point_g_integrand(const ClosedFn& f, cplx m, double q, double hbar) {
  const ClosedFn df_fn = f.d_q();
  return g_integrand(df_fn, df_fn.d_q(), m, q, hbar);
}

std::vector<cplx> point_g_from_f(const ClosedFn& f, cplx m, const std::vector<double>& samples,
                                 double hbar) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<cplx> g;
  if (samples.empty()) return g;
  const ClosedFn df_fn = f.d_q(), d2f_fn = df_fn.d_q();
  for (double q : samples) g_integrand(df_fn, d2f_fn, m, q, hbar);
  g.push_back(0.0);
  cplx acc = 0.0;
  for (size_t k = 1; k < samples.size(); ++k) {
    const double a = samples[k - 1], b = samples[k];
    auto re = [&](double x) { return g_integrand(df_fn, d2f_fn, m, x, hbar).real(); };
    auto im = [&](double x) { return g_integrand(df_fn, d2f_fn, m, x, hbar).imag(); };
    acc += cplx(gauss_kronrod<double, 31>::integrate(re, a, b, 10, 1e-13),
                gauss_kronrod<double, 31>::integrate(im, a, b, 10, 1e-13));
    g.push_back(acc);
  }
  return g;
}

bool point_case_iv_predicate(const ClosedFn& f, cplx m, const std::vector<double>& samples) {
  const ClosedFn df_fn = f.d_q(), d2f_fn = df_fn.d_q();
  for (double q : samples) {
    const cplx df = df_fn(q), d2f = d2f_fn(q);
    const cplx den = 2.0 - m * df;
    const cplx dR = 4.0 * m * d2f / (den * den);
    const cplx dups = 1.0 + m * df / 2.0;
    if (std::abs(dR / dups - dR) > 1e-9) return false;
  }
  return true;
}

cplx flow_A(const ClosedFn& f, cplx m, cplx q0) {
  using State = std::array<double, 2>;
  namespace ode = boost::numeric::odeint;
  auto rhs = [&](const State& x, State& dxdt, double) {
    const cplx q(x[0], x[1]);
    if (!finite(q) || std::abs(q) > 1e12)
      throw Error(ErrorCode::FlowEscape, "flow escaped before t = 1");
    const cplx v = -m * f(q);
    dxdt = {v.real(), v.imag()};
  };
  State x{q0.real(), q0.imag()};
  size_t steps = 0;
  auto observer = [&](const State&, double) {
    if (++steps > 2000000) throw Error(ErrorCode::FlowEscape, "step limit reached before t = 1");
  };
  ode::integrate_adaptive(ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>()),
                          rhs, x, 0.0, 1.0, 1e-3, observer);
  const cplx r(x[0], x[1]);
  if (!finite(r)) throw Error(ErrorCode::FlowEscape, "non-finite flow value");
  return r;
}

}  // namespace psq
