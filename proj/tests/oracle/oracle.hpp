#pragma once

// Reference computations for the tests. Nothing here calls into the library:
// plain composite Simpson rules and closed forms written out by hand.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using std::numbers::pi;

inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double gauss_amp(double x, double sigma) {
  return std::exp(-x * x / (4.0 * sigma * sigma)) / std::pow(2.0 * pi * sigma * sigma, 0.25);
}

inline double gauss_amp_d(double x, double sigma) {
  return -x / (2.0 * sigma * sigma) * gauss_amp(x, sigma);
}

inline double gauss_intensity(double x, double sigma) {
  return std::exp(-x * x / (2.0 * sigma * sigma)) / (std::sqrt(2.0 * pi) * sigma);
}

/// First Hermite-Gaussian, unit norm.
inline double hg1(double x, double sigma) {
  return x * std::exp(-x * x / (4.0 * sigma * sigma)) /
         (std::pow(2.0 * pi, 0.25) * std::pow(sigma, 1.5));
}

inline double sinc_amp(double x, double w) {
  const double u = pi * x / w;
  return (u == 0.0 ? 1.0 : std::sin(u) / u) / std::sqrt(w);
}

inline double j0(double v) { return v == 0.0 ? 1.0 : std::sin(v) / v; }
inline double j1(double v) {
  if (std::abs(v) < 1e-4) return v / 3.0 - v * v * v / 30.0;
  return std::sin(v) / (v * v) - std::cos(v) / v;
}

/// Brute-force probability of projecting the two-source state onto `mode`.
inline double projection_probability(const std::function<double(double)>& mode,
                                     const std::function<double(double)>& amp, double delta,
                                     double lo, double hi, std::size_t n) {
  const double plus = simpson([&](double x) { return mode(x) * amp(x - delta / 2); }, lo, hi, n);
  const double minus = simpson([&](double x) { return mode(x) * amp(x + delta / 2); }, lo, hi, n);
  return 0.5 * (plus * plus + minus * minus);
}

/// Exact classical FI of the continuous two-source Gaussian image.
inline double gauss_classical_fisher(double delta, double sigma, std::size_t n = 200000) {
  auto rho = [&](double x) {
    return 0.5 * (gauss_intensity(x - delta / 2, sigma) + gauss_intensity(x + delta / 2, sigma));
  };
  auto drho = [&](double x) {
    const double a = (x - delta / 2) / (sigma * sigma) * gauss_intensity(x - delta / 2, sigma);
    const double b = (x + delta / 2) / (sigma * sigma) * gauss_intensity(x + delta / 2, sigma);
    return 0.25 * (a - b);
  };
  const double r = 12.0 * sigma + delta;
  return simpson([&](double x) {
    const double p = rho(x);
    return p > 1e-300 ? drho(x) * drho(x) / p : 0.0;
  }, -r, r, n);
}

/// Pixel probabilities and their delta-derivatives for the Gaussian,
/// from the error function, by central differences in delta.
inline double gauss_pixelated_fisher(double delta, double sigma, double pitch, std::size_t n_pix) {
  auto cdf = [&](double x) { return 0.5 * std::erfc(-x / (std::sqrt(2.0) * sigma)); };
  auto q = [&](double d, double a, double b) {
    return 0.5 * (cdf(b - d / 2) - cdf(a - d / 2) + cdf(b + d / 2) - cdf(a + d / 2));
  };
  const double h = 1e-5 * sigma;
  double f = 0.0;
  const double x0 = -0.5 * pitch * static_cast<double>(n_pix);
  for (std::size_t i = 0; i < n_pix; ++i) {
    const double a = x0 + pitch * static_cast<double>(i);
    const double b = a + pitch;
    const double p = q(delta, a, b);
    if (p <= 0.0) continue;
    const double dp = (q(delta + h, a, b) - q(delta - h, a, b)) / (2.0 * h);
    f += dp * dp / p;
  }
  return f;
}

inline double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_variance(const std::vector<double>& v) {
  const double m = sample_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

} // namespace oracle
