#include "superres/errors.hpp"
#include "superres/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace superres;
using namespace superres::numerics;

TEST(Integrate, GaussianPdfNormalization) {
  auto pdf = [](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi); };
  EXPECT_NEAR(integrate(pdf, -8, 8), 1.0, 1e-10);
}

TEST(Integrate, OddIntegrandVanishes) {
  EXPECT_NEAR(integrate([](double x) { return x; }, -1, 1), 0.0, 1e-12);
}

TEST(Integrate, SquaredGaussianDerivative) {
  const double s = 0.5;
  auto dpsi = [s](double x) {
    const double psi = std::exp(-x * x / (4 * s * s)) / std::pow(2 * std::numbers::pi * s * s, 0.25);
    const double d = -x / (2 * s * s) * psi;
    return d * d;
  };
  EXPECT_NEAR(integrate(dpsi, -4, 4), 1.0, 1e-8);
}

TEST(Integrate, ReversedLimitsRejected) {
  auto f = [](double x) { return std::sin(x); };
  EXPECT_THROW(integrate(f, std::numbers::pi, 0.0), ParameterError);
}

TEST(Integrate, BreakpointsSplitPanels) {
  // |x - 0.37| has a kink the breakpoint removes.
  auto f = [](double x) { return std::abs(x - 0.37); };
  const double pts[] = {0.37, -5.0};
  EXPECT_NEAR(integrate_panels(f, -1, 1, 2.0, {}, pts), 0.5 * (1.37 * 1.37 + 0.63 * 0.63), 1e-14);
}

TEST(Integrate, NonConvergenceCarriesEstimate) {
  QuadratureSpec spec;
  spec.max_subdivisions = 4;
  spec.absolute_tol = 1e-14;
  spec.relative_tol = 1e-14;
  try {
    integrate_with_error([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3141)); }, 0, 1, spec);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
    EXPECT_GT(e.error_bound(), 0.0);
  }
}

TEST(Integrate, InvalidSpecRejected) {
  QuadratureSpec spec;
  spec.absolute_tol = 0.0;
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0, 1, spec), ParameterError);
  spec = {};
  spec.max_subdivisions = 3;
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0, 1, spec), ParameterError);
}

TEST(Integrate, ExceptionFromIntegrandPropagates) {
  auto f = [](double x) -> double {
    if (x > 0.5) throw DataError("boom");
    return x;
  };
  EXPECT_THROW(integrate(f, 0, 1), DataError);
}

TEST(Integrate, PanelsMatchSinglePass) {
  auto f = [](double x) { return std::cos(3 * x) * std::exp(-x * x); };
  EXPECT_NEAR(integrate_panels(f, -6, 6, 0.7), integrate(f, -6, 6), 1e-10);
}

TEST(FindRoot, Linear) {
  EXPECT_NEAR(find_root_monotone([](double x) { return x - 2; }, 0, 5, 1e-12), 2.0, 1e-12);
}

TEST(FindRoot, InvertsGaussianPa) {
  // p_a(d) = t exp(-t), t = d^2/16; invert p_a = 0.0025 by fine table lookup.
  auto pa = [](double d) {
    const double t = d * d / 16;
    return t * std::exp(-t);
  };
  double best = 0;
  double best_err = 1;
  for (int i = 0; i <= 2000000; ++i) {
    const double d = 2.0 * i / 2000000.0;
    const double err = std::abs(pa(d) - 0.0025);
    if (err < best_err) {
      best_err = err;
      best = d;
    }
  }
  const double root = find_root_monotone([&](double d) { return pa(d) - 0.0025; }, 0, 2, 1e-12);
  EXPECT_NEAR(root, best, 2e-6);
}

TEST(FindRoot, SameSignIsBracketError) {
  EXPECT_THROW(find_root_monotone([](double x) { return x * x + 1; }, 0, 1, 1e-9), BracketError);
}

TEST(FindRoot, ZeroAtEndpoint) {
  EXPECT_EQ(find_root_monotone([](double x) { return x; }, 0, 1, 1e-9), 0.0);
  EXPECT_EQ(find_root_monotone([](double x) { return x - 1; }, 0, 1, 1e-9), 1.0);
}

TEST(GoldenSection, FindsInteriorMaximum) {
  EXPECT_NEAR(golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0, 1, 1e-9),
              0.3, 1e-8);
}

TEST(GoldenSection, FlatFunctionPrefersLeft) {
  const double x = golden_section_maximize([](double) { return 1.0; }, 0, 1, 1e-9);
  EXPECT_LT(x, 1e-6);
}
