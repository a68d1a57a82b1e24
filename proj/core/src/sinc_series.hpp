#pragma once

#include <cmath>

namespace superres::detail {

// Below this |u| the sinc and its first derivative switch to 5-term Taylor series.
inline constexpr double kSincSeriesCutoff = 1e-3;
// The second derivative cancels three O(1/u^3) terms, so its series runs further out.
inline constexpr double kSincSecondSeriesCutoff = 5e-2;

/// sin(u)/u
inline double sinc_u(double u) {
  if (std::abs(u) < kSincSeriesCutoff) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0 * (1.0 - u2 / 72.0)));
  }
  return std::sin(u) / u;
}

/// d/du sin(u)/u, which is also -j1(u).
inline double sinc_u_prime(double u) {
  if (std::abs(u) < kSincSeriesCutoff) {
    const double u2 = u * u;
    return u * (-1.0 / 3.0 + u2 / 30.0 - u2 * u2 / 840.0 + u2 * u2 * u2 / 45360.0 -
                u2 * u2 * u2 * u2 / 3991680.0);
  }
  return std::cos(u) / u - std::sin(u) / (u * u);
}

inline double sinc_u_second(double u) {
  if (std::abs(u) < kSincSecondSeriesCutoff) {
    const double u2 = u * u;
    return -1.0 / 3.0 + u2 / 10.0 - u2 * u2 / 168.0 + u2 * u2 * u2 / 6480.0 -
           u2 * u2 * u2 * u2 / 443520.0;
  }
  const double s = std::sin(u);
  const double c = std::cos(u);
  return -s / u - 2.0 * c / (u * u) + 2.0 * s / (u * u * u);
}

} // namespace superres::detail
