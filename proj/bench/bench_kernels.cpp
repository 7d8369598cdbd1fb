#include <benchmark/benchmark.h>

#include <cmath>

#include "kernels.hpp"
#include "psq/gridlab.hpp"

using psq::kernels::cplx;

namespace {

psq::kernels::ModeGrid modes(int n) {
  psq::kernels::ModeGrid g{n, n, std::vector<double>(n), std::vector<double>(n), 1.0};
  for (int k = 0; k < n; ++k) {
    const int s = k <= n / 2 ? k : k - n;
    g.kq[k] = g.kp[k] = 2 * M_PI * s / (n * 0.1);
  }
  return g;
}

std::vector<cplx> data(size_t size) {
  std::vector<cplx> v(size);
  for (size_t k = 0; k < size; ++k) v[k] = cplx(std::sin(0.01 * k), std::cos(0.013 * k));
  return v;
}

template <bool Omp>
void BM_TwistedConvolution(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto g = modes(n);
  const auto F = data(size_t(n) * n), G = data(size_t(n) * n);
  std::vector<cplx> out;
  for (auto _ : state) {
    if (Omp)
      psq::kernels::twisted_convolution_omp(g, F, G, out);
    else
      psq::kernels::twisted_convolution_serial(g, F, G, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Omp>
void BM_WindowNorm(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto x = data(size_t(n) * n);
  for (auto _ : state) {
    const double v = Omp ? psq::kernels::window_norm2_omp(x, n, n / 8, n - n / 8, n / 8, n - n / 8)
                         : psq::kernels::window_norm2_serial(x, n, n / 8, n - n / 8, n / 8, n - n / 8);
    benchmark::DoNotOptimize(v);
  }
}

template <psq::Backend B>
void BM_StarPolyGrid(benchmark::State& state) {
  const int n = int(state.range(0));
  const psq::GridSpec s{n, n, -6, 6, -6, 6, 1.0};
  const auto W = psq::GridFn::sample(s, [](double q, double p) { return std::exp(-(q * q + p * p)); });
  const psq::PhasePoly H = psq::PhasePoly::p(2) + psq::PhasePoly::q(3);
  psq::GridOptions opts;
  opts.backend = B;
  for (auto _ : state) benchmark::DoNotOptimize(psq::star_poly_grid(H, W, opts).values().data());
}

}  // namespace

BENCHMARK(BM_TwistedConvolution<false>)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwistedConvolution<true>)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowNorm<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_WindowNorm<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_StarPolyGrid<psq::Backend::Serial>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StarPolyGrid<psq::Backend::OpenMP>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
