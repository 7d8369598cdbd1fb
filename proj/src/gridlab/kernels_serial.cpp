#include <cmath>

#include "kernels.hpp"

namespace psq::kernels {

double pairwise_sum(const double* x, size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

// Reference version: phases recomputed directly for every term.
void twisted_convolution_serial(const ModeGrid& g, const std::vector<cplx>& F,
                                const std::vector<cplx>& G, std::vector<cplx>& out) {
  const int nq = g.nq, np = g.np;
  out.assign(size_t(nq) * np, 0.0);
  for (int kq = 0; kq < nq; ++kq) {
    for (int kp = 0; kp < np; ++kp) {
      cplx acc = 0.0;
      for (int aq = 0; aq < nq; ++aq) {
        const int bq = (kq - aq + nq) % nq;
        for (int ap = 0; ap < np; ++ap) {
          const int bp = (kp - ap + np) % np;
          const double phase = 0.5 * g.hbar * (g.kp[ap] * g.kq[kq] - g.kq[aq] * g.kp[kp]);
          acc += F[size_t(aq) * np + ap] * G[size_t(bq) * np + bp] * std::polar(1.0, phase);
        }
      }
      out[size_t(kq) * np + kp] = acc;
    }
  }
}

void axpy_pointwise_serial(const std::vector<cplx>& c, const std::vector<cplx>& d,
                           std::vector<cplx>& out) {
  for (size_t i = 0; i < out.size(); ++i) out[i] += c[i] * d[i];
}

namespace {
constexpr int kBlock = 1024;
}

double window_norm2_serial(const std::vector<cplx>& x, int np, int i0, int i1, int j0, int j1) {
  std::vector<double> sq;
  sq.reserve(size_t(i1 - i0) * (j1 - j0));
  for (int i = i0; i < i1; ++i)
    for (int j = j0; j < j1; ++j) sq.push_back(std::norm(x[size_t(i) * np + j]));
  std::vector<double> blocks;
  for (size_t s = 0; s < sq.size(); s += kBlock)
    blocks.push_back(pairwise_sum(sq.data() + s, std::min<size_t>(kBlock, sq.size() - s)));
  return pairwise_sum(blocks.data(), blocks.size());
}

}  // namespace psq::kernels
