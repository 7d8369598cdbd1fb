#include "spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace psq {
namespace detail {
namespace {
std::mutex plan_mutex;  // FFTW planning is not thread-safe

std::vector<double> taper_1d(int n, double lo, double hi, double margin) {
  std::vector<double> w(n, 1.0);
  if (margin <= 0.0) return w;
  const double m = margin * (hi - lo);
  const double sigma = m / 10.5;
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = lo + i * step;
    w[i] = 0.5 * (std::erf((x - (lo + m / 2)) / sigma) - std::erf((x - (hi - m / 2)) / sigma));
  }
  return w;
}

}  // namespace

std::vector<double> wavenumbers(int n, double step) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / (n * step);
  for (int i = 0; i < n; ++i) k[i] = base * (i <= (n - 1) / 2 ? i : i - n);
  return k;
}

std::vector<cplx> fft2(const std::vector<cplx>& in, int nq, int np, int sign) {
  std::vector<cplx> out(in.size());
  std::vector<cplx> work = in;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_2d(nq, np, reinterpret_cast<fftw_complex*>(work.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

Spectrum::Spectrum(const GridFn& f, const GridOptions& opts) : spec_(f.spec()) {
  std::vector<cplx> v = f.values();
  if (opts.taper && opts.margin > 0.0) {
    const GridFn w = taper_window(spec_, opts.margin);
    for (size_t i = 0; i < v.size(); ++i) v[i] *= w.values()[i];
  }
  modes_ = fft2(v, spec_.nq, spec_.np, -1);
  const double norm = 1.0 / double(spec_.size());
  for (auto& c : modes_) c *= norm;
}

GridFn Spectrum::derivative(int a, int b) const {
  const int nq = spec_.nq, np = spec_.np;
  const auto kq = wavenumbers(nq, spec_.dq());
  const auto kp = wavenumbers(np, spec_.dp());
  std::vector<cplx> m = modes_;
  const cplx I(0.0, 1.0);
  for (int i = 0; i < nq; ++i) {
    const bool nyq_q = (nq % 2 == 0 && i == nq / 2);
    const cplx fq = (a % 2 == 1 && nyq_q) ? 0.0 : std::pow(I * kq[i], a);
    for (int j = 0; j < np; ++j) {
      const bool nyq_p = (np % 2 == 0 && j == np / 2);
      const cplx fp = (b % 2 == 1 && nyq_p) ? 0.0 : std::pow(I * kp[j], b);
      m[size_t(i) * np + j] *= fq * fp;
    }
  }
  return GridFn(spec_, fft2(m, nq, np, +1));
}

Window interior_window(const GridSpec& spec, double margin) {
  auto range = [&](int n, double lo, double hi) {
    const double m = margin * (hi - lo);
    const double step = (hi - lo) / (n - 1);
    int a = 0, b = n;
    while (a < n && lo + a * step < lo + m - 1e-12 * (hi - lo)) ++a;
    while (b > a && lo + (b - 1) * step > hi - m + 1e-12 * (hi - lo)) --b;
    return std::pair{a, b};
  };
  auto [i0, i1] = range(spec.nq, spec.qmin, spec.qmax);
  auto [j0, j1] = range(spec.np, spec.pmin, spec.pmax);
  return {i0, i1, j0, j1};
}

}  // namespace detail

GridFn taper_window(const GridSpec& spec, double margin) {
  const auto wq = detail::taper_1d(spec.nq, spec.qmin, spec.qmax, margin);
  const auto wp = detail::taper_1d(spec.np, spec.pmin, spec.pmax, margin);
  GridFn w(spec);
  for (int i = 0; i < spec.nq; ++i)
    for (int j = 0; j < spec.np; ++j) w.at(i, j) = wq[i] * wp[j];
  return w;
}

GridFn spectral_derivative(const GridFn& f, int a, int b, const GridOptions& opts) {
  return detail::Spectrum(f, opts).derivative(a, b);
}

}  // namespace psq
