#pragma once

#include "superres/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace superres {

std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng);

/// Counts for n draws over categories with probabilities probs (sum 1 +/- 1e-12).
/// Implemented as a chain of conditional binomials, so the counts always sum to n.
std::vector<std::uint64_t> sample_multinomial(std::uint64_t n, std::span<const double> probs,
                                              RngStream& rng);

double sample_gamma(double shape, double scale, RngStream& rng);

std::uint64_t sample_poisson(double mean, RngStream& rng);

double sample_normal(double mean, double stddev, RngStream& rng);

} // namespace superres
