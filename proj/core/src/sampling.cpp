#include "superres/sampling.hpp"

#include "superres/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace superres {

std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sample_binomial: p outside [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  std::binomial_distribution<std::int64_t> dist(static_cast<std::int64_t>(n), p);
  return static_cast<std::uint64_t>(dist(rng));
}

std::vector<std::uint64_t> sample_multinomial(std::uint64_t n, std::span<const double> probs,
                                              RngStream& rng) {
  if (probs.empty()) throw ParameterError("sample_multinomial: no categories");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sample_multinomial: probability outside [0, 1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ParameterError("sample_multinomial: probabilities must sum to 1");

  std::vector<std::uint64_t> counts(probs.size(), 0);
  std::uint64_t remaining = n;
  double mass_left = 1.0;
  for (std::size_t i = 0; i + 1 < probs.size() && remaining > 0; ++i) {
    if (mass_left <= 0.0) break;
    const double conditional = std::clamp(probs[i] / mass_left, 0.0, 1.0);
    counts[i] = sample_binomial(remaining, conditional, rng);
    remaining -= counts[i];
    mass_left -= probs[i];
  }
  counts.back() += remaining;
  return counts;
}

double sample_gamma(double shape, double scale, RngStream& rng) {
  if (!(shape > 0.0) || !(scale > 0.0)) throw ParameterError("sample_gamma: shape and scale must be positive");
  std::gamma_distribution<double> dist(shape, scale);
  return dist(rng);
}

std::uint64_t sample_poisson(double mean, RngStream& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw ParameterError("sample_poisson: mean must be finite and non-negative");
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return static_cast<std::uint64_t>(dist(rng));
}

double sample_normal(double mean, double stddev, RngStream& rng) {
  if (!(stddev >= 0.0)) throw ParameterError("sample_normal: stddev must be non-negative");
  if (stddev == 0.0) return mean;
  std::normal_distribution<double> dist(mean, stddev);
  return dist(rng);
}

} // namespace superres
