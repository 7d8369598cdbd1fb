#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "psq/closed_fn.hpp"
#include "psq/phase_poly.hpp"

namespace psq {

/// Rectangular phase-space grid; endpoints included, row-major over q then p.
struct GridSpec {
  int nq = 0, np = 0;
  double qmin = 0, qmax = 0, pmin = 0, pmax = 0;
  double hbar = 1.0;

  double dq() const { return (qmax - qmin) / (nq - 1); }
  double dp() const { return (pmax - pmin) / (np - 1); }
  double q(int i) const { return qmin + i * dq(); }
  double p(int j) const { return pmin + j * dp(); }
  size_t size() const { return size_t(nq) * size_t(np); }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

class GridFn {
 public:
  GridFn() = default;
  explicit GridFn(GridSpec spec) : spec_(spec), values_(spec.size()) { validate(); }
  GridFn(GridSpec spec, std::vector<cplx> values);

  static GridFn sample(const GridSpec& spec, const std::function<cplx(double, double)>& fn);
  static GridFn sample(const GridSpec& spec, const ClosedFn& fn);
  /// Polynomial with symbols evaluated at `params` (hbar taken from the grid).
  static GridFn sample(const GridSpec& spec, const PhasePoly& f,
                       const std::map<std::string, cplx>& params = {});

  const GridSpec& spec() const { return spec_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }
  cplx& at(int i, int j) { return values_[size_t(i) * spec_.np + j]; }
  const cplx& at(int i, int j) const { return values_[size_t(i) * spec_.np + j]; }

  GridFn& operator+=(const GridFn& o);
  GridFn& operator-=(const GridFn& o);
  GridFn& operator*=(cplx s);
  friend GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
  friend GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }
  friend GridFn operator*(GridFn a, cplx s) { return a *= s; }
  friend GridFn operator*(cplx s, GridFn a) { return a *= s; }

 private:
  void validate() const;
  GridSpec spec_;
  std::vector<cplx> values_;
};

void write_csv(std::ostream& os, const GridFn& f);
GridFn read_csv(std::istream& is);
void write_csv_file(const std::string& path, const GridFn& f);
GridFn read_csv_file(const std::string& path);

enum class Backend { Serial, OpenMP };

struct GridOptions {
  double margin = 0.15;  // fraction of each axis excluded from norms (per side)
  bool taper = true;     // smooth erf window that is 1 on the interior
  Backend backend = Backend::OpenMP;
};

/// Window equal to 1 on the interior and decaying to 0 across the margin.
GridFn taper_window(const GridSpec& spec, double margin);

/// d_q^a d_p^b of f by FFT (after tapering when requested).
GridFn spectral_derivative(const GridFn& f, int a, int b, const GridOptions& opts = {});

/// H*W and W*H for polynomial H: Groenewold series with spectral derivatives.
GridFn star_poly_grid(const PhasePoly& H, const GridFn& W, const GridOptions& opts = {},
                      const std::map<std::string, cplx>& params = {});
GridFn star_grid_poly(const GridFn& W, const PhasePoly& H, const GridOptions& opts = {},
                      const std::map<std::string, cplx>& params = {});

/// ||r||_2 / ||ref||_2 over the interior window; 0 when ref vanishes there.
double interior_relative_norm(const GridFn& r, const GridFn& ref, const GridOptions& opts = {});

struct GridResidual {
  double value = 0.0;
  bool degenerate_input = false;  // reference vanished on the interior
};

/// ||H*W - E W|| / ||W|| on the interior.
GridResidual genvalue_residual(const PhasePoly& H, const GridFn& W, double E,
                               const GridOptions& opts = {},
                               const std::map<std::string, cplx>& params = {});

/// ||A*X - Y*A|| / ||A|| on the interior.
GridResidual relation_residual_grid(const GridFn& A, const PhasePoly& X, const PhasePoly& Y,
                                    const GridOptions& opts = {},
                                    const std::map<std::string, cplx>& params = {});

struct AiryDeltaOptions {
  double eta = 1.0;    // contour shift: modes are evaluated at k = kappa + i eta
  double pmin = -40.0, pmax = 20.0;
  double band_floor = 1e-7;  // resolved band: |raw mode| >= floor * max
  int min_band_modes = 8;
  bool apply_symbol = true;  // false gives the negative control
};

struct AiryDeltaResult {
  double deviation = 0.0;
  int band_modes = 0;
  double kappa_max = 0.0;
  cplx mean{};
};

/// Samples Ai((2/hbar)^{2/3}(p - E)) on `modes` points, transforms in p,
/// applies the symbol exp(-i hbar^2 k^3/12) of exp((hbar^2/12) d_p^3),
/// removes exp(-i k E) and measures max |z - mean|/|mean| over the band.
/// Throws UnderResolved when the band has fewer than min_band_modes modes.
AiryDeltaResult airy_to_delta_fourier_check(double hbar, double E, int modes,
                                            const AiryDeltaOptions& opts = {});

/// Largest per-axis size accepted by general_star_grid (PSQ_MAX_GRID or 128).
int max_general_star_axis();

/// F*G by twisted convolution of the discrete Fourier modes:
/// (F*G)^(k) = sum_a F^(a) G^(k-a) exp(i hbar (a_p k_q - a_q k_p)/2).
/// Throws ResourceLimit above max_general_star_axis() points per axis.
GridFn general_star_grid(const GridFn& F, const GridFn& G, const GridOptions& opts = {});

}  // namespace psq
