#pragma once

#include <vector>

#include "psq/gridlab.hpp"

namespace psq::detail {

// Forward FFT of a (tapered) grid function, reusable for many derivatives.
class Spectrum {
 public:
  Spectrum(const GridFn& f, const GridOptions& opts);
  GridFn derivative(int a, int b) const;
  const std::vector<cplx>& modes() const { return modes_; }

 private:
  GridSpec spec_;
  std::vector<cplx> modes_;
};

std::vector<double> wavenumbers(int n, double step);
std::vector<cplx> fft2(const std::vector<cplx>& in, int nq, int np, int sign);

struct Window {
  int i0, i1, j0, j1;  // half-open index ranges
};
Window interior_window(const GridSpec& spec, double margin);

}  // namespace psq::detail
