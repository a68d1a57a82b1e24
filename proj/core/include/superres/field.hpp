#pragma once

#include "superres/numerics.hpp"
#include "superres/psf.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace superres {

/// A real one-dimensional field: x-space samples on [-support_radius,
/// support_radius], and optionally its exact band-limited spectrum.
struct Field {
  std::function<double(double)> amplitude;
  double support_radius = 0.0;
  std::optional<Spectrum> spectrum;
  /// Sorted points where the amplitude is only piecewise smooth.
  std::vector<double> breakpoints;
};

Field field_of(const PsfModel& psf);

/// int f(x) g(x - shift) dx. Uses the spectra when both fields have one
/// (Parseval, no truncation error), x-space quadrature otherwise.
double inner_product(const Field& f, const Field& g, double shift = 0.0,
                     const numerics::QuadratureSpec& spec = {});

} // namespace superres
