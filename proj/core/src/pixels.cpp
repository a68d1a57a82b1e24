#include "superres/pixels.hpp"

#include "superres/errors.hpp"

#include <cmath>
#include <sstream>

namespace superres {

std::vector<double> uniform_pixel_edges(double pixel_width, std::size_t n_pixels) {
  if (!(pixel_width > 0.0) || !std::isfinite(pixel_width))
    throw ParameterError("pixel width must be positive");
  if (n_pixels == 0) throw ParameterError("pixel grid needs at least one pixel");
  std::vector<double> edges(n_pixels + 1);
  const double half = 0.5 * static_cast<double>(n_pixels);
  for (std::size_t i = 0; i <= n_pixels; ++i)
    edges[i] = (static_cast<double>(i) - half) * pixel_width;
  return edges;
}

void validate_pixel_edges(std::span<const double> edges) {
  if (edges.size() < 2) throw ParameterError("pixel grid needs at least two edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i])) throw ParameterError("pixel edges must be finite");
    if (i > 0 && !(edges[i] > edges[i - 1]))
      throw ParameterError("pixel edges must be strictly increasing");
  }
}

std::vector<double> pixel_probabilities(const PsfModel& psf, double delta,
                                        std::span<const double> edges) {
  validate_pixel_edges(edges);
  const double h = 0.5 * delta;
  std::vector<double> q(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    q[i] = 0.5 * (psf.interval_mass(a - h, b - h) + psf.interval_mass(a + h, b + h));
  }
  return q;
}

std::vector<double> pixel_probability_derivatives(const PsfModel& psf, double delta,
                                                  std::span<const double> edges) {
  validate_pixel_edges(edges);
  const double h = 0.5 * delta;
  // g(e) = I(e + h) - I(e - h); dq_i = [g(b) - g(a)] / 4.
  std::vector<double> g(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    g[i] = psf.intensity(edges[i] + h) - psf.intensity(edges[i] - h);
  std::vector<double> dq(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) dq[i] = 0.25 * (g[i + 1] - g[i]);
  return dq;
}

double grid_coverage(const PsfModel& psf, double delta, std::span<const double> edges) {
  validate_pixel_edges(edges);
  const double h = 0.5 * delta;
  const double a = edges.front();
  const double b = edges.back();
  return 0.5 * (psf.interval_mass(a - h, b - h) + psf.interval_mass(a + h, b + h));
}

void require_grid_coverage(const PsfModel& psf, double delta, std::span<const double> edges,
                           double min_coverage) {
  const double coverage = grid_coverage(psf, delta, edges);
  if (coverage < min_coverage) {
    std::ostringstream msg;
    msg << "pixel grid [" << edges.front() << ", " << edges.back() << "] holds only "
        << coverage << " of the image intensity (need " << min_coverage << ")";
    throw ParameterError(msg.str());
  }
}

} // namespace superres
