#pragma once

#include <complex>
#include <vector>

namespace psq::kernels {

using cplx = std::complex<double>;

// Twisted convolution on an nq x np mode grid (FFT index order):
//   out[k] = sum_a F[a] G[k-a] exp(i hbar (a_p k_q - a_q k_p)/2)
// with kq/kp the signed wavenumbers of each index.
struct ModeGrid {
  int nq, np;
  std::vector<double> kq, kp;  // signed wavenumbers per index
  double hbar;
};

void twisted_convolution_serial(const ModeGrid& g, const std::vector<cplx>& F,
                                const std::vector<cplx>& G, std::vector<cplx>& out);
void twisted_convolution_omp(const ModeGrid& g, const std::vector<cplx>& F,
                             const std::vector<cplx>& G, std::vector<cplx>& out);

// out += c[i] * d[i] elementwise.
void axpy_pointwise_serial(const std::vector<cplx>& c, const std::vector<cplx>& d,
                           std::vector<cplx>& out);
void axpy_pointwise_omp(const std::vector<cplx>& c, const std::vector<cplx>& d,
                        std::vector<cplx>& out);

// Sum of |x|^2 over the listed row/column window. Fixed-size blocks summed
// pairwise, so the result does not depend on the thread count.
double window_norm2_serial(const std::vector<cplx>& x, int np, int i0, int i1, int j0, int j1);
double window_norm2_omp(const std::vector<cplx>& x, int np, int i0, int i1, int j0, int j1);

// Pairwise (cascade) summation of a contiguous range.
double pairwise_sum(const double* x, size_t n);

}  // namespace psq::kernels
