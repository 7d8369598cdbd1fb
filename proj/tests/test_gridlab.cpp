#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "../src/gridlab/kernels.hpp"
#include "psq/airy.hpp"
#include "psq/error.hpp"
#include "psq/gridlab.hpp"

using namespace psq;

namespace {

const PhasePoly q = PhasePoly::q();
const PhasePoly p = PhasePoly::p();

GridFn gaussian(const GridSpec& s, double width = 1.0) {
  return GridFn::sample(s, [&](double x, double y) { return std::exp(-(x * x + y * y) / width); });
}

GridFn airy_wigner(const GridSpec& s, double E = 0.0) {
  const double c = std::pow(2.0 / s.hbar, 2.0 / 3.0);
  return GridFn::sample(s, [&](double x, double y) { return cplx(airy(c * (x + y * y - E))); });
}

}  // namespace

TEST(GridCsv, RoundTripIsBitIdentical) {
  const GridSpec s{5, 7, -1.0, 2.0, -0.3, 0.9, 0.37};
  const GridFn f = GridFn::sample(
      s, [](double x, double y) { return cplx(std::sin(x) / 3.0, std::exp(y) * 1e-7); });
  std::stringstream ss;
  write_csv(ss, f);
  const GridFn g = read_csv(ss);
  EXPECT_EQ(g.spec(), s);
  EXPECT_EQ(g.values(), f.values());

  const auto path = std::filesystem::temp_directory_path() / "psq_roundtrip.csv";
  write_csv_file(path.string(), f);
  EXPECT_EQ(read_csv_file(path.string()).values(), f.values());
  std::filesystem::remove(path);
}

TEST(GridCsv, Errors) {
  std::stringstream bad("not a grid\n");
  EXPECT_THROW(read_csv(bad), Error);
  EXPECT_THROW(read_csv_file("/nonexistent/dir/grid.csv"), Error);
}

TEST(Spectral, GaussianDerivatives) {
  const GridSpec s{128, 128, -8, 8, -8, 8, 1.0};
  const GridFn g = gaussian(s);
  const GridFn d = spectral_derivative(g, 1, 2);
  const GridFn ref = GridFn::sample(s, [](double x, double y) {
    // d_q d_p^2 exp(-x^2 - y^2)
    return -2 * x * (4 * y * y - 2) * std::exp(-(x * x + y * y));
  });
  EXPECT_LT(interior_relative_norm(d - ref, ref), 1e-10);
}

TEST(Spectral, ConvergenceUntilFloor) {
  double prev = 1.0;
  for (int n : {32, 64, 128}) {
    const GridSpec s{n, n, -6, 6, -6, 6, 1.0};
    const double r = genvalue_residual((q.pow(2) + p.pow(2)) * Coeff::rational(1, 2),
                                       gaussian(s), 0.5)
                         .value;
    if (prev > 1e-11) {
      EXPECT_LT(r, std::max(prev / 4, 1e-11)) << n;
    }
    prev = r;
  }
}

TEST(Genvalue, AiryWigner) {
  const GridSpec s{256, 256, -6, 6, -6, 6, 1.0};
  const GridFn W = airy_wigner(s);
  const PhasePoly H = p.pow(2) + q;
  EXPECT_LE(genvalue_residual(H, W, 0.0).value, 1e-6);
  // wrong eigenvalue is detected
  EXPECT_GT(genvalue_residual(H, W, 0.1).value, 1e-2);
}

TEST(Genvalue, DegenerateInput) {
  const GridSpec s{32, 32, -1, 1, -1, 1, 1.0};
  const GridResidual r = genvalue_residual(q, GridFn(s), 0.0);
  EXPECT_TRUE(r.degenerate_input);
  EXPECT_EQ(r.value, 0.0);
}

TEST(Relation, InterchangeChirp) {
  const GridSpec s{256, 256, -6, 6, -6, 6, 1.0};
  const GridFn A = GridFn::sample(s, [](double x, double y) {
    return std::exp(cplx(0, 1) * (x * x + y * y));
  });
  EXPECT_LE(relation_residual_grid(A, q, p).value, 1e-8);
  EXPECT_GT(relation_residual_grid(A, q, -p).value, 1e-2);
}

TEST(Backends, SerialAndOpenMPAgree) {
  const GridSpec s{64, 64, -6, 6, -6, 6, 0.5};
  const GridFn W = gaussian(s, 0.5);
  GridOptions ser, omp;
  ser.backend = Backend::Serial;
  omp.backend = Backend::OpenMP;
  const PhasePoly H = q.pow(3) * p + p.pow(2);
  EXPECT_EQ(star_poly_grid(H, W, ser).values(), star_poly_grid(H, W, omp).values());
  EXPECT_EQ(interior_relative_norm(W, W * 2.0, ser), interior_relative_norm(W, W * 2.0, omp));
  const GridFn a = general_star_grid(W, W, ser), b = general_star_grid(W, W, omp);
  EXPECT_LT(interior_relative_norm(a - b, a), 1e-13);
}

TEST(Kernels, DeterministicNorms) {
  std::vector<cplx> x(300 * 301);
  for (size_t k = 0; k < x.size(); ++k) x[k] = cplx(std::sin(0.1 * k), std::cos(0.37 * k));
  const double a = kernels::window_norm2_serial(x, 301, 10, 290, 5, 296);
  const double b = kernels::window_norm2_omp(x, 301, 10, 290, 5, 296);
  EXPECT_EQ(a, b);
  long double ref = 0;
  for (int i = 10; i < 290; ++i)
    for (int j = 5; j < 296; ++j) ref += std::norm(x[size_t(i) * 301 + j]);
  EXPECT_NEAR(a, double(ref), 1e-12 * double(ref));
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(kernels::pairwise_sum(v.data(), v.size()), 100.0, 1e-12);
}

TEST(GeneralStar, GaussianProjector) {
  // the ground-state Wigner function w = 2 exp(-(q^2+p^2)/hbar) obeys w*w = w
  const GridSpec s{64, 64, -6, 6, -6, 6, 1.0};
  const GridFn w = gaussian(s) * 2.0;
  const GridFn ww = general_star_grid(w, w);
  EXPECT_LT(interior_relative_norm(ww - w, w), 1e-12);
}

TEST(GeneralStar, AgreesWithPolynomialSeries) {
  const GridSpec s{128, 128, -10, 10, -10, 10, 0.25};
  const GridFn F = gaussian(s, 2.0);
  const PhasePoly G = q.pow(2) * p + p;
  const GridFn Gs = GridFn::sample(s, G);
  const GridFn a = general_star_grid(F, Gs);
  const GridFn b = star_grid_poly(F, G);
  EXPECT_LT(interior_relative_norm(a - b, b), 1e-9);
}

TEST(GeneralStar, ResourceLimit) {
  const GridSpec s{40, 40, -1, 1, -1, 1, 1.0};
  setenv("PSQ_MAX_GRID", "32", 1);
  EXPECT_EQ(max_general_star_axis(), 32);
  try {
    general_star_grid(GridFn(s), GridFn(s));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
  }
  unsetenv("PSQ_MAX_GRID");
  EXPECT_EQ(max_general_star_axis(), 128);
}

TEST(AiryDelta, FlatSpectrumAndControl) {
  const AiryDeltaResult r = airy_to_delta_fourier_check(1.0, 0.0, 256);
  EXPECT_LE(r.deviation, 1e-6);
  EXPECT_GE(r.band_modes, 8);
  // the constant is 1/c with c = (2/hbar)^{2/3}
  EXPECT_NEAR(std::abs(r.mean), std::pow(0.5, 2.0 / 3.0), 1e-6);

  AiryDeltaOptions control;
  control.apply_symbol = false;
  EXPECT_GT(airy_to_delta_fourier_check(1.0, 0.0, 256, control).deviation, 0.1);

  const AiryDeltaResult shifted = airy_to_delta_fourier_check(0.5, 1.3, 512);
  EXPECT_LE(shifted.deviation, 1e-6);
}

TEST(AiryDelta, UnderResolved) {
  try {
    airy_to_delta_fourier_check(1.0, 0.0, 8);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnderResolved);
  }
}
