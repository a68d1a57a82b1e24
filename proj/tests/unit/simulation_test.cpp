#include "superres/errors.hpp"
#include "superres/modes.hpp"
#include "superres/pixels.hpp"
#include "superres/psf.hpp"
#include "superres/rng.hpp"
#include "superres/sampling.hpp"
#include "superres/simulation.hpp"

#include "oracle/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace superres;

namespace {

SceneConfig scene(double delta, std::uint64_t n, PhotonModel model = PhotonModel::FixedN) {
  return SceneConfig{delta, make_gaussian(1.0), n, model};
}

} // namespace

TEST(SimulateProjection, CountsAddUpWithFixedN) {
  const auto s = scene(0.8, 100000);
  const auto p = standard_outcome_probabilities(s.psf, s.delta_true);
  RngStream rng(1, 0);
  const auto o = simulate_projection(s, p, std::nullopt, rng);
  EXPECT_EQ(o.total(), 100000u);
  EXPECT_EQ(o.recovered_0, o.n_0);
  EXPECT_EQ(o.recovered_a, o.n_a);
  EXPECT_GT(o.n_lost, 0u);
}

TEST(SimulateProjection, NoAntisymmetricCountsAtZeroSeparation) {
  const auto s = scene(0.0, 10000);
  const auto p = standard_outcome_probabilities(s.psf, 0.0);
  for (std::uint64_t i = 0; i < 20; ++i) {
    RngStream rng(5, i);
    EXPECT_EQ(simulate_projection(s, p, std::nullopt, rng).n_a, 0u);
  }
}

TEST(SimulateProjection, ConditionalFrequencyMatchesModel) {
  const auto s = scene(0.4, 1000000);
  const auto p = standard_outcome_probabilities(s.psf, 0.4);
  const double t = 0.01;
  const double r = t / (1 + t);
  double sum = 0;
  const int reps = 100;
  for (int i = 0; i < reps; ++i) {
    RngStream rng(7, static_cast<std::uint64_t>(i));
    const auto o = simulate_projection(s, p, std::nullopt, rng);
    sum += static_cast<double>(o.n_a) / static_cast<double>(o.n_0 + o.n_a);
  }
  const double se = std::sqrt(r * (1 - r) / (1e6 * std::exp(-t) * (1 + t)) / reps);
  EXPECT_NEAR(sum / reps, r, 3 * se);
}

TEST(SimulateProjection, StaleProbabilitiesRejected) {
  const auto s = scene(0.4, 100);
  const auto p = standard_outcome_probabilities(s.psf, 0.5);
  RngStream rng(1, 0);
  EXPECT_THROW(simulate_projection(s, p, std::nullopt, rng), ModelError);
}

TEST(SimulateProjection, SameStreamSameOutcome) {
  const auto s = scene(1.0, 100000, PhotonModel::PoissonMeanN);
  const auto p = standard_outcome_probabilities(s.psf, 1.0);
  const EmccdParams em{50.0, 3.0};
  RngStream a(9, 123), b(9, 123);
  const auto x = simulate_projection(s, p, em, a);
  const auto y = simulate_projection(s, p, em, b);
  EXPECT_EQ(x.n_0, y.n_0);
  EXPECT_EQ(x.n_a, y.n_a);
  EXPECT_EQ(x.analog_a, y.analog_a);
}

TEST(SimulateProjection, PoissonTotal) {
  const auto s = scene(1.0, 5000, PhotonModel::PoissonMeanN);
  const auto p = standard_outcome_probabilities(s.psf, 1.0);
  std::vector<double> totals;
  for (std::uint64_t i = 0; i < 4000; ++i) {
    RngStream rng(2, i);
    totals.push_back(static_cast<double>(simulate_projection(s, p, std::nullopt, rng).total()));
  }
  EXPECT_NEAR(oracle::sample_mean(totals), 5000, 3 * std::sqrt(5000.0 / 4000));
  EXPECT_NEAR(oracle::sample_variance(totals) / 5000, 1.0, 0.1);
}

TEST(Emccd, ExcessNoiseFactorTwo) {
  // Poisson photoelectrons through exponential gain: Var(analog / g) = 2 E[n].
  const EmccdParams em{200.0, 0.0};
  std::vector<double> v;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    RngStream rng(4, i);
    const auto n = sample_poisson(400.0, rng);
    v.push_back(emccd_readout(n, em, rng).first / em.gain);
  }
  EXPECT_NEAR(oracle::sample_mean(v), 400.0, 1.0);
  EXPECT_NEAR(oracle::sample_variance(v) / 400.0, 2.0, 0.08);
}

TEST(Emccd, RecoveredCountSpreadIndependentOfGain) {
  for (double g : {10.0, 1000.0}) {
    const EmccdParams em{g, 0.0};
    std::vector<double> v;
    for (std::uint64_t i = 0; i < 20000; ++i) {
      RngStream rng(6, i);
      v.push_back(static_cast<double>(emccd_readout(250, em, rng).second));
    }
    EXPECT_NEAR(oracle::sample_mean(v), 250.0, 0.5) << g;
    EXPECT_NEAR(oracle::sample_variance(v) / 250.0, 1.0, 0.06) << g;
  }
}

TEST(Emccd, SaturationAndValidation) {
  RngStream rng(1, 0);
  EmccdParams em{100.0, 0.0, 5000.0};
  const auto [analog, n] = emccd_readout(1000, em, rng);
  EXPECT_EQ(analog, 5000.0);
  EXPECT_EQ(n, 50u);
  EXPECT_EQ(emccd_readout(0, EmccdParams{}, rng).second, 0u);
  EXPECT_THROW((EmccdParams{0.5}.validate()), ParameterError);
  EXPECT_THROW((EmccdParams{10.0, -1.0}.validate()), ParameterError);
}

TEST(SimulateCcd, ZeroPhotonsGiveEmptyFrame) {
  const auto edges = uniform_pixel_edges(16.0 / 1024, 1024);
  RngStream rng(1, 0);
  const auto f = simulate_ccd(scene(1.0, 0), edges, rng);
  EXPECT_EQ(f.total(), 0u);
  EXPECT_EQ(f.counts.size(), 1024u);
}

TEST(SimulateCcd, PositionMomentsAtZeroSeparation) {
  const std::size_t n_pix = 1600;
  const double pitch = 0.01;
  const auto edges = uniform_pixel_edges(pitch, n_pix);
  RngStream rng(8, 0);
  const auto f = simulate_ccd(scene(0.0, 100000), edges, rng);
  double n = 0, s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < n_pix; ++i) {
    const double x = 0.5 * (edges[i] + edges[i + 1]);
    const double c = static_cast<double>(f.counts[i]);
    n += c;
    s1 += c * x;
    s2 += c * x * x;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean - pitch * pitch / 12;
  EXPECT_NEAR(mean, 0.0, 3 / std::sqrt(1e5));
  EXPECT_NEAR(var, 1.0, 3 * std::sqrt(2 / 1e5));
  EXPECT_GE(f.total(), 99800u);
}

TEST(SimulateCcd, CoverageViolation) {
  const auto edges = uniform_pixel_edges(0.01, 100);
  RngStream rng(1, 0);
  EXPECT_THROW(simulate_ccd(scene(1.0, 10), edges, rng), ParameterError);
}

TEST(SimulateCcd, PoissonPixelMeans) {
  const auto edges = uniform_pixel_edges(0.5, 32);
  const auto s = scene(1.0, 2000, PhotonModel::PoissonMeanN);
  const auto q = pixel_probabilities(s.psf, 1.0, edges);
  std::vector<double> centre;
  for (std::uint64_t i = 0; i < 3000; ++i) {
    RngStream rng(10, i);
    centre.push_back(static_cast<double>(simulate_ccd(s, edges, q, rng).counts[16]));
  }
  EXPECT_NEAR(oracle::sample_mean(centre), 2000 * q[16], 3 * std::sqrt(2000 * q[16] / 3000));
}
