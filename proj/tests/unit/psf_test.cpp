#include "superres/errors.hpp"
#include "superres/fisher.hpp"
#include "superres/numerics.hpp"
#include "superres/psf.hpp"

#include "oracle/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace superres;

namespace {

std::vector<AmplitudeSample> gaussian_samples(double sigma, std::size_t n, double half, double scale = 1.0) {
  std::vector<AmplitudeSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -half + 2 * half * static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = {x, scale * oracle::gauss_amp(x, sigma)};
  }
  return out;
}

} // namespace

TEST(GaussianPsf, PeakValue) {
  const auto psf = make_gaussian(1.0);
  EXPECT_NEAR(psf.amplitude(0.0), 0.63161878, 1e-8);
  EXPECT_EQ(psf.derivative(0.0), 0.0);
}

TEST(GaussianPsf, NormalizedOverTruncation) {
  const auto psf = make_gaussian(0.05);
  auto i = [&](double x) { return psf.intensity(x); };
  EXPECT_NEAR(numerics::integrate(i, -0.4, 0.4), 1.0, 1e-9);
  EXPECT_NEAR(psf.truncation_radius(), 0.4, 1e-15);
}

TEST(GaussianPsf, DerivativesMatchOracle) {
  const auto psf = make_gaussian(1.3);
  for (double x : {-2.0, -0.4, 0.7, 3.1}) {
    EXPECT_NEAR(psf.amplitude(x), oracle::gauss_amp(x, 1.3), 1e-14);
    EXPECT_NEAR(psf.derivative(x), oracle::gauss_amp_d(x, 1.3), 1e-14);
    const double h = 1e-4;
    const double d2 = (psf.amplitude(x + h) - 2 * psf.amplitude(x) + psf.amplitude(x - h)) / (h * h);
    EXPECT_NEAR(psf.second_derivative(x), d2, 1e-6);
    const double di = (psf.intensity(x + h) - psf.intensity(x - h)) / (2 * h);
    EXPECT_NEAR(psf.intensity_derivative(x), di, 1e-7);
  }
}

TEST(GaussianPsf, TailAndIntervalMass) {
  const auto psf = make_gaussian(2.0);
  EXPECT_NEAR(psf.tail_mass(0.0), 0.5, 1e-15);
  EXPECT_NEAR(psf.tail_mass(2.0), 0.5 * std::erfc(1 / std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(psf.tail_mass(-2.0), psf.tail_mass(2.0), 1e-15);
  const double m = oracle::simpson([](double x) { return oracle::gauss_intensity(x, 2.0); }, -1, 3, 2000);
  EXPECT_NEAR(psf.interval_mass(-1, 3), m, 1e-12);
  EXPECT_NEAR(psf.interval_mass(1, 3), psf.interval_mass(-3, -1), 1e-15);
}

TEST(GaussianPsf, RejectsNonPositiveSigma) {
  EXPECT_THROW(make_gaussian(0.0), ParameterError);
  EXPECT_THROW(make_gaussian(-1.0), ParameterError);
  EXPECT_THROW(make_gaussian(std::nan("")), ParameterError);
}

TEST(SincPsf, Values) {
  const auto psf = make_sinc(1.0);
  EXPECT_DOUBLE_EQ(psf.amplitude(0.0), 1.0);
  EXPECT_NEAR(psf.amplitude(1.0), 0.0, 1e-15);
  EXPECT_EQ(psf.derivative(0.0), 0.0);
  const auto wide = make_sinc(4.0);
  EXPECT_DOUBLE_EQ(wide.amplitude(0.0), 0.5);
}

TEST(SincPsf, SeriesBranchIsContinuous) {
  const auto psf = make_sinc(1.0);
  for (double x : {1e-6, 2.5e-4, 3.1e-4, 1e-3, 0.0159, 0.016, 0.05}) {
    EXPECT_NEAR(psf.amplitude(x), oracle::sinc_amp(x, 1.0), 1e-14) << x;
    const double h = 1e-5;
    const double d = (oracle::sinc_amp(x + h, 1.0) - oracle::sinc_amp(x - h, 1.0)) / (2 * h);
    EXPECT_NEAR(psf.derivative(x), d, 1e-8) << x;
    const double d2 = (oracle::sinc_amp(x + h, 1.0) - 2 * oracle::sinc_amp(x, 1.0) +
                       oracle::sinc_amp(x - h, 1.0)) / (h * h);
    EXPECT_NEAR(psf.second_derivative(x), d2, 2e-5) << x;
  }
  EXPECT_NEAR(psf.second_derivative(0.0), -std::numbers::pi * std::numbers::pi / 3, 1e-12);
}

TEST(SincPsf, FullLineNormalization) {
  const auto psf = make_sinc(1.0);
  auto i = [&](double x) { return psf.intensity(x); };
  const double inner = numerics::integrate_panels(i, -60, 60, 0.5);
  EXPECT_NEAR(inner + 2 * psf.tail_mass(60.0), 1.0, 1e-6);
  // Analytic tail against a brute-force sum of the 1/x^2-ish tail.
  const double tail = oracle::simpson([](double x) { return std::pow(oracle::sinc_amp(x, 1.0), 2); },
                                      60, 4060, 4000000);
  EXPECT_NEAR(psf.tail_mass(60.0), tail + 1 / (std::numbers::pi * std::numbers::pi * 2 * 4060), 1e-7);
}

TEST(SincPsf, RejectsNonPositiveWidth) {
  EXPECT_THROW(make_sinc(0.0), ParameterError);
  EXPECT_THROW(make_sinc(1.0, -3.0), ParameterError);
}

TEST(TabulatedPsf, GaussianCopyHasGaussianFisher) {
  const auto rows = gaussian_samples(1.0, 512, 8.0);
  const auto psf = make_tabulated(rows);
  EXPECT_EQ(psf.kind(), PsfKind::Tabulated);
  EXPECT_TRUE(psf.inversion_symmetric());
  EXPECT_NEAR(quantum_fisher(psf), 0.25, 1e-4);
  EXPECT_NEAR(psf.width(), 1.0, 1e-3);
  EXPECT_NEAR(psf.interval_mass(-8, 8), 1.0, 1e-9);
}

TEST(TabulatedPsf, ScaleInvariant) {
  const auto a = make_tabulated(gaussian_samples(1.0, 256, 8.0));
  const auto b = make_tabulated(gaussian_samples(1.0, 256, 8.0, 3.0));
  for (double x : {-3.3, -1.0, 0.0, 0.25, 2.9}) {
    EXPECT_NEAR(a.amplitude(x), b.amplitude(x), 1e-13);
    EXPECT_NEAR(a.derivative(x), b.derivative(x), 1e-12);
  }
}

TEST(TabulatedPsf, InputErrors) {
  std::vector<AmplitudeSample> two{{0.0, 1.0}, {1.0, 0.5}};
  EXPECT_THROW(make_tabulated(two), DataError);
  auto rows = gaussian_samples(1.0, 64, 8.0);
  std::swap(rows[10], rows[11]);
  EXPECT_THROW(make_tabulated(rows), DataError);
  rows = gaussian_samples(1.0, 64, 8.0);
  rows[20].x = rows[19].x;
  EXPECT_THROW(make_tabulated(rows), DataError);
  rows = gaussian_samples(1.0, 64, 8.0, 0.0);
  EXPECT_THROW(make_tabulated(rows), DataError);
}

TEST(TabulatedPsf, AsymmetricDetected) {
  auto rows = gaussian_samples(1.0, 200, 8.0);
  for (auto& r : rows) r.amplitude *= 1 + 0.3 * std::tanh(r.x);
  EXPECT_FALSE(make_tabulated(rows).inversion_symmetric());
}

TEST(PsfKindNames, RoundTrip) {
  for (auto k : {PsfKind::Gaussian, PsfKind::Sinc, PsfKind::Tabulated})
    EXPECT_EQ(parse_psf_kind(to_string(k)), k);
  EXPECT_THROW(parse_psf_kind("airy"), ParameterError);
}
