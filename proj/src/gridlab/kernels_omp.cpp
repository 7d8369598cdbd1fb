#include <omp.h>

#include <cmath>

#include "kernels.hpp"

namespace psq::kernels {

// Phase tables: exp(i hbar a_p k_q/2) and exp(-i hbar a_q k_p/2) factor the
// twist, so the inner loop is a plain complex multiply-add.
void twisted_convolution_omp(const ModeGrid& g, const std::vector<cplx>& F,
                             const std::vector<cplx>& G, std::vector<cplx>& out) {
  const int nq = g.nq, np = g.np;
  out.assign(size_t(nq) * np, 0.0);
  std::vector<cplx> tq(size_t(nq) * np), tp(size_t(np) * nq);
  for (int kq = 0; kq < nq; ++kq)
    for (int ap = 0; ap < np; ++ap)
      tq[size_t(kq) * np + ap] = std::polar(1.0, 0.5 * g.hbar * g.kp[ap] * g.kq[kq]);
  for (int kp = 0; kp < np; ++kp)
    for (int aq = 0; aq < nq; ++aq)
      tp[size_t(kp) * nq + aq] = std::polar(1.0, -0.5 * g.hbar * g.kq[aq] * g.kp[kp]);

#pragma omp parallel for schedule(static)
  for (long k = 0; k < long(nq) * np; ++k) {
    const int kq = int(k / np), kp = int(k % np);
    const cplx* rowq = &tq[size_t(kq) * np];
    cplx acc = 0.0;
    for (int aq = 0; aq < nq; ++aq) {
      const int bq = (kq - aq + nq) % nq;
      const cplx* Fa = &F[size_t(aq) * np];
      const cplx* Gb = &G[size_t(bq) * np];
      cplx inner = 0.0;
      int bp = kp;
      for (int ap = 0; ap < np; ++ap) {
        inner += Fa[ap] * Gb[bp] * rowq[ap];
        bp = bp == 0 ? np - 1 : bp - 1;
      }
      acc += inner * tp[size_t(kp) * nq + aq];
    }
    out[size_t(k)] = acc;
  }
}

void axpy_pointwise_omp(const std::vector<cplx>& c, const std::vector<cplx>& d,
                        std::vector<cplx>& out) {
  const long n = long(out.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[size_t(i)] += c[size_t(i)] * d[size_t(i)];
}

namespace {
constexpr int kBlock = 1024;
}

double window_norm2_omp(const std::vector<cplx>& x, int np, int i0, int i1, int j0, int j1) {
  const int w = j1 - j0;
  const size_t n = size_t(i1 - i0) * w;
  std::vector<double> sq(n);
#pragma omp parallel for schedule(static)
  for (long t = 0; t < long(n); ++t) {
    const int i = i0 + int(t / w), j = j0 + int(t % w);
    sq[size_t(t)] = std::norm(x[size_t(i) * np + j]);
  }
  const long nb = long((n + kBlock - 1) / kBlock);
  std::vector<double> blocks(static_cast<size_t>(nb));
#pragma omp parallel for schedule(static)
  for (long b = 0; b < nb; ++b) {
    const size_t s = size_t(b) * kBlock;
    blocks[size_t(b)] = pairwise_sum(sq.data() + s, std::min<size_t>(kBlock, n - s));
  }
  return pairwise_sum(blocks.data(), blocks.size());
}

}  // namespace psq::kernels
