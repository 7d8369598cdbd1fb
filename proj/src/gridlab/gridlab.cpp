#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

#include "kernels.hpp"
#include "psq/airy.hpp"
#include "psq/error.hpp"
#include "psq/gridlab.hpp"
#include "spectral.hpp"

namespace psq {
namespace {

std::map<std::string, cplx> with_hbar(const std::map<std::string, cplx>& params, double hbar) {
  auto v = params;
  v["hbar"] = hbar;
  return v;
}

void accumulate(std::vector<cplx>& out, const GridFn& c, const GridFn& d, Backend b) {
  if (b == Backend::OpenMP)
    kernels::axpy_pointwise_omp(c.values(), d.values(), out);
  else
    kernels::axpy_pointwise_serial(c.values(), d.values(), out);
}

// (i hbar/2)^s / s! (-1)^t C(s,t) as an exact coefficient
Coeff series_weight(int s, int t) {
  GaussRat w(mpq_class(binomial(s, t), factorial(s)));
  if (t % 2) w = -w;
  Coeff c = Coeff(w) * Coeff::hbar(s);
  GaussRat half_i(0, mpq_class(1, 2));
  for (int k = 0; k < s; ++k) c = c * Coeff(half_i);
  return c;
}

GridFn star_series(const PhasePoly& H, const GridFn& W, bool poly_left, const GridOptions& opts,
                   const std::map<std::string, cplx>& params) {
  const GridSpec& spec = W.spec();
  const auto vals = with_hbar(params, spec.hbar);
  std::vector<cplx> out(spec.size(), 0.0);
  const detail::Spectrum spectrum(W, opts);
  const int smax = H.total_degree();
  for (int s = 0; s <= smax; ++s) {
    for (int t = 0; t <= s; ++t) {
      // poly_left:  (d_q^{s-t} d_p^t H)(d_p^{s-t} d_q^t W)
      // poly_right: (d_q^{s-t} d_p^t W)(d_p^{s-t} d_q^t H)
      const PhasePoly dH = poly_left ? H.d_q(s - t).d_p(t) : H.d_p(s - t).d_q(t);
      if (dH.is_zero()) continue;
      const GridFn c = GridFn::sample(spec, dH * series_weight(s, t), vals);
      const int a = poly_left ? t : s - t;
      const int b = poly_left ? s - t : t;
      if (s == 0)
        accumulate(out, c, W, opts.backend);
      else
        accumulate(out, c, spectrum.derivative(a, b), opts.backend);
    }
  }
  return GridFn(spec, std::move(out));
}

double window_norm2(const GridFn& f, const detail::Window& w, Backend b) {
  return b == Backend::OpenMP
             ? kernels::window_norm2_omp(f.values(), f.spec().np, w.i0, w.i1, w.j0, w.j1)
             : kernels::window_norm2_serial(f.values(), f.spec().np, w.i0, w.i1, w.j0, w.j1);
}

}  // namespace

GridFn star_poly_grid(const PhasePoly& H, const GridFn& W, const GridOptions& opts,
                      const std::map<std::string, cplx>& params) {
  return star_series(H, W, true, opts, params);
}

GridFn star_grid_poly(const GridFn& W, const PhasePoly& H, const GridOptions& opts,
                      const std::map<std::string, cplx>& params) {
  return star_series(H, W, false, opts, params);
}

double interior_relative_norm(const GridFn& r, const GridFn& ref, const GridOptions& opts) {
  const detail::Window w = detail::interior_window(ref.spec(), opts.margin);
  const double den = window_norm2(ref, w, opts.backend);
  if (den == 0.0) return 0.0;
  return std::sqrt(window_norm2(r, w, opts.backend) / den);
}

GridResidual genvalue_residual(const PhasePoly& H, const GridFn& W, double E,
                               const GridOptions& opts,
                               const std::map<std::string, cplx>& params) {
  const detail::Window w = detail::interior_window(W.spec(), opts.margin);
  if (window_norm2(W, w, opts.backend) == 0.0) {
    std::cerr << "warning: DegenerateInput: W vanishes on the interior window\n";
    return {0.0, true};
  }
  const GridFn r = star_poly_grid(H, W, opts, params) - W * cplx(E);
  return {interior_relative_norm(r, W, opts), false};
}

GridResidual relation_residual_grid(const GridFn& A, const PhasePoly& X, const PhasePoly& Y,
                                    const GridOptions& opts,
                                    const std::map<std::string, cplx>& params) {
  const detail::Window w = detail::interior_window(A.spec(), opts.margin);
  if (window_norm2(A, w, opts.backend) == 0.0) {
    std::cerr << "warning: DegenerateInput: A vanishes on the interior window\n";
    return {0.0, true};
  }
  const GridFn r = star_grid_poly(A, X, opts, params) - star_poly_grid(Y, A, opts, params);
  return {interior_relative_norm(r, A, opts), false};
}

AiryDeltaResult airy_to_delta_fourier_check(double hbar, double E, int modes,
                                            const AiryDeltaOptions& opts) {
  if (!(hbar > 0.0)) throw Error(ErrorCode::InvalidArgument, "hbar must be positive");
  if (modes < 16) throw Error(ErrorCode::UnderResolved, "at least 16 modes are required");
  const double c = std::pow(2.0 / hbar, 2.0 / 3.0);
  const double dp = (opts.pmax - opts.pmin) / (modes - 1);
  std::vector<double> samples(modes);
  for (int j = 0; j < modes; ++j) {
    const double w = (j == 0 || j == modes - 1) ? 0.5 : 1.0;
    const double p = opts.pmin + j * dp;
    samples[j] = w * airy(c * (p - E));
  }
  const auto kappa = detail::wavenumbers(modes, dp);
  const cplx I(0.0, 1.0);
  std::vector<cplx> raw(modes), z(modes);
  double peak = 0.0;
  for (int n = 0; n < modes; ++n) {
    const cplx k(kappa[n], opts.eta);
    cplx acc = 0.0;
    for (int j = 0; j < modes; ++j) acc += samples[j] * std::exp(-I * k * (opts.pmin + j * dp));
    raw[n] = acc * dp;
    peak = std::max(peak, std::abs(raw[n]));
    cplx v = raw[n] * std::exp(I * k * E);
    if (opts.apply_symbol) v *= std::exp(-I * hbar * hbar * k * k * k / 12.0);
    z[n] = v;
  }
  AiryDeltaResult res;
  cplx mean = 0.0;
  for (int n = 0; n < modes; ++n) {
    if (std::abs(raw[n]) < opts.band_floor * peak) continue;
    mean += z[n];
    ++res.band_modes;
    res.kappa_max = std::max(res.kappa_max, std::abs(kappa[n]));
  }
  if (res.band_modes < opts.min_band_modes)
    throw Error(ErrorCode::UnderResolved,
                "resolved band has " + std::to_string(res.band_modes) + " modes");
  mean /= double(res.band_modes);
  res.mean = mean;
  for (int n = 0; n < modes; ++n) {
    if (std::abs(raw[n]) < opts.band_floor * peak) continue;
    res.deviation = std::max(res.deviation, std::abs(z[n] - mean) / std::abs(mean));
  }
  return res;
}

int max_general_star_axis() {
  if (const char* env = std::getenv("PSQ_MAX_GRID")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 1) return int(v);
  }
  return 128;
}

GridFn general_star_grid(const GridFn& F, const GridFn& G, const GridOptions& opts) {
  const GridSpec& spec = F.spec();
  if (!(spec == G.spec())) throw Error(ErrorCode::InvalidArgument, "grid shapes differ");
  const int cap = max_general_star_axis();
  if (spec.nq > cap || spec.np > cap)
    throw Error(ErrorCode::ResourceLimit, "grid exceeds " + std::to_string(cap) +
                                              " points per axis (set PSQ_MAX_GRID)");
  const detail::Spectrum sf(F, opts), sg(G, opts);
  kernels::ModeGrid mg{spec.nq, spec.np, detail::wavenumbers(spec.nq, spec.dq()),
                       detail::wavenumbers(spec.np, spec.dp()), spec.hbar};
  std::vector<cplx> modes;
  if (opts.backend == Backend::OpenMP)
    kernels::twisted_convolution_omp(mg, sf.modes(), sg.modes(), modes);
  else
    kernels::twisted_convolution_serial(mg, sf.modes(), sg.modes(), modes);
  return GridFn(spec, detail::fft2(modes, spec.nq, spec.np, +1));
}

}  // namespace psq
