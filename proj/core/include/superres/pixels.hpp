#pragma once

#include "superres/psf.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace superres {

/// n_pixels + 1 equally spaced edges of width pixel_width, centred on x = 0.
std::vector<double> uniform_pixel_edges(double pixel_width, std::size_t n_pixels);

/// Checks edges are finite and strictly increasing; throws ParameterError otherwise.
void validate_pixel_edges(std::span<const double> edges);

/// q_i = int over pixel i of rho_delta(x) = [I(x - delta/2) + I(x + delta/2)] / 2.
std::vector<double> pixel_probabilities(const PsfModel& psf, double delta,
                                        std::span<const double> edges);

/// d q_i / d delta, exact from the intensity at the shifted pixel edges.
std::vector<double> pixel_probability_derivatives(const PsfModel& psf, double delta,
                                                  std::span<const double> edges);

/// Fraction of rho_delta that lands inside the grid.
double grid_coverage(const PsfModel& psf, double delta, std::span<const double> edges);

/// Throws ParameterError unless the grid holds at least min_coverage of rho_delta.
void require_grid_coverage(const PsfModel& psf, double delta, std::span<const double> edges,
                           double min_coverage = 0.999);

} // namespace superres
