#include "superres/errors.hpp"
#include "superres/rng.hpp"
#include "superres/sampling.hpp"

#include "oracle/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace superres;

TEST(Binomial, Degenerate) {
  RngStream rng(1, 0);
  EXPECT_EQ(sample_binomial(10, 0.0, rng), 0u);
  EXPECT_EQ(sample_binomial(10, 1.0, rng), 10u);
  EXPECT_EQ(sample_binomial(0, 0.3, rng), 0u);
}

TEST(Binomial, InvalidProbability) {
  RngStream rng(1, 0);
  EXPECT_THROW(sample_binomial(10, -0.1, rng), ParameterError);
  EXPECT_THROW(sample_binomial(10, 1.1, rng), ParameterError);
  EXPECT_THROW(sample_binomial(10, std::nan(""), rng), ParameterError);
}

TEST(Multinomial, MeanOfFirstCount) {
  RngStream rng(3, 0);
  const std::vector<double> p{0.5, 0.5};
  std::vector<double> first;
  for (int i = 0; i < 10000; ++i) {
    const auto c = sample_multinomial(1000, p, rng);
    ASSERT_EQ(c[0] + c[1], 1000u);
    first.push_back(static_cast<double>(c[0]));
  }
  EXPECT_NEAR(oracle::sample_mean(first), 500.0, 5.0);
}

TEST(Multinomial, ProbabilitiesMustSumToOne) {
  RngStream rng(1, 0);
  const std::vector<double> p{0.5, 0.4};
  EXPECT_THROW(sample_multinomial(10, p, rng), ParameterError);
  const std::vector<double> neg{1.5, -0.5};
  EXPECT_THROW(sample_multinomial(10, neg, rng), ParameterError);
}

TEST(Gamma, SampleMean) {
  RngStream rng(9, 0);
  for (double k : {0.5, 3.0, 40.0}) {
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += sample_gamma(k, 1.0, rng);
    EXPECT_NEAR(sum / n, k, 3 * std::sqrt(k / n)) << "k=" << k;
  }
}

TEST(Gamma, InvalidParameters) {
  RngStream rng(1, 0);
  EXPECT_THROW(sample_gamma(0.0, 1.0, rng), ParameterError);
  EXPECT_THROW(sample_gamma(1.0, -1.0, rng), ParameterError);
}

TEST(Poisson, MeanAndVariance) {
  RngStream rng(11, 0);
  std::vector<double> v;
  for (int i = 0; i < 50000; ++i) v.push_back(static_cast<double>(sample_poisson(12.5, rng)));
  EXPECT_NEAR(oracle::sample_mean(v), 12.5, 3 * std::sqrt(12.5 / 50000));
  EXPECT_NEAR(oracle::sample_variance(v), 12.5, 0.5);
  EXPECT_EQ(sample_poisson(0.0, rng), 0u);
  EXPECT_THROW(sample_poisson(-1.0, rng), ParameterError);
}

TEST(Normal, Moments) {
  RngStream rng(12, 0);
  std::vector<double> v;
  for (int i = 0; i < 50000; ++i) v.push_back(sample_normal(2.0, 3.0, rng));
  EXPECT_NEAR(oracle::sample_mean(v), 2.0, 3 * 3.0 / std::sqrt(50000.0));
  EXPECT_NEAR(std::sqrt(oracle::sample_variance(v)), 3.0, 0.05);
  EXPECT_THROW(sample_normal(0.0, -1.0, rng), ParameterError);
}
