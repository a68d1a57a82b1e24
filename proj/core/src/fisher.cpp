#include "superres/fisher.hpp"

#include "superres/errors.hpp"
#include "superres/numerics.hpp"
#include "superres/pixels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace superres {
namespace {

constexpr double kDensityFloor = 1e-300;

// Panels of half a width keep at most one zero of a sinc-like PSF per panel.
double panel_width(const PsfModel& psf) { return 0.5 * psf.width(); }

double peak_intensity(const PsfModel& psf) {
  const double r = psf.truncation_radius();
  double peak = psf.intensity(0.0);
  constexpr int kSamples = 4000;
  for (int i = 0; i <= kSamples; ++i)
    peak = std::max(peak, psf.intensity(-r + 2.0 * r * i / kSamples));
  return peak;
}

double curvature_integral(const PsfModel& psf, double threshold,
                          const numerics::QuadratureSpec& spec) {
  auto integrand = [&](double x) {
    const double i0 = psf.intensity(x);
    if (i0 < threshold) return 0.0;
    const double i2 = psf.intensity_second_derivative(x);
    return i2 * i2 / i0;
  };
  const double r = psf.truncation_radius();
  return numerics::integrate_panels(integrand, -r, r, panel_width(psf), spec, psf.breakpoints());
}

} // namespace

double quantum_fisher(const PsfModel& psf) {
  if (const auto& spectrum = psf.spectrum()) {
    const auto& value = spectrum->value;
    auto integrand = [&](double k) { return k * k * std::norm(value(k)); };
    const double band = spectrum->band_limit;
    return numerics::integrate(integrand, -band, band) / (2.0 * std::numbers::pi);
  }
  const double r = psf.truncation_radius();
  auto integrand = [&](double x) {
    const double d = psf.derivative(x);
    return d * d;
  };
  return numerics::integrate_panels(integrand, -r, r, panel_width(psf), {}, psf.breakpoints());
}

double qcrlb(const PsfModel& psf, std::uint64_t n_photons) {
  if (n_photons == 0) throw ParameterError("qcrlb: photon number must be at least 1");
  return 1.0 / (static_cast<double>(n_photons) * quantum_fisher(psf));
}

double classical_fisher_exact(const PsfModel& psf, double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw ParameterError("classical_fisher_exact: delta must be non-negative");
  if (delta == 0.0) return 0.0;
  const double h = 0.5 * delta;
  auto integrand = [&](double x) {
    const double rho = 0.5 * (psf.intensity(x - h) + psf.intensity(x + h));
    if (rho < kDensityFloor) return 0.0;
    const double drho = 0.25 * (psf.intensity_derivative(x + h) - psf.intensity_derivative(x - h));
    return drho * drho / rho;
  };
  const double r = psf.truncation_radius() + h;
  std::vector<double> breaks;
  for (double b : psf.breakpoints()) {
    breaks.push_back(b - h);
    breaks.push_back(b + h);
  }
  return numerics::integrate_panels(integrand, -r, r, panel_width(psf), {}, breaks);
}

SmallSeparationCoefficient classical_fisher_smalld(const PsfModel& psf) {
  const double peak = peak_intensity(psf);
  numerics::QuadratureSpec loose;
  loose.relative_tol = 1e-7;

  // Shrinking exclusion neighbourhoods around (near-)zeros of I.
  const double coarse = curvature_integral(psf, 1e-6 * peak, loose);
  const double fine = curvature_integral(psf, 1e-8 * peak, loose);
  const bool grows = fine > 1.1 * coarse;

  SmallSeparationCoefficient out;
  if (grows) {
    out.value = fine / 16.0;
    out.divergent = true;
    return out;
  }
  try {
    out.value = curvature_integral(psf, kDensityFloor, {}) / 16.0;
  } catch (const NumericalError&) {
    out.value = fine / 16.0;
    out.divergent = true;
  }
  return out;
}

double pixelated_classical_fisher(const PsfModel& psf, double delta, double pixel_width,
                                  std::size_t n_pixels) {
  const auto edges = uniform_pixel_edges(pixel_width, n_pixels);
  return pixelated_classical_fisher(psf, delta, edges);
}

double pixelated_classical_fisher(const PsfModel& psf, double delta,
                                  std::span<const double> edges) {
  if (!(delta >= 0.0)) throw ParameterError("pixelated_classical_fisher: delta must be non-negative");
  require_grid_coverage(psf, delta, edges);
  const auto q = pixel_probabilities(psf, delta, edges);
  const auto dq = pixel_probability_derivatives(psf, delta, edges);
  double fi = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] < kDensityFloor) continue;
    fi += dq[i] * dq[i] / q[i];
  }
  return fi;
}

FisherReport fisher_report(const PsfModel& psf, std::uint64_t n_photons,
                           std::span<const double> deltas) {
  FisherReport report;
  report.quantum_fi_per_photon = quantum_fisher(psf);
  report.qcrlb_per_photon = 1.0 / report.quantum_fi_per_photon;
  report.n_photons = n_photons;
  report.qcrlb = qcrlb(psf, n_photons);
  report.smalld = classical_fisher_smalld(psf);
  report.classical_fi_exact.reserve(deltas.size());
  for (double d : deltas) report.classical_fi_exact.push_back({d, classical_fisher_exact(psf, d)});
  return report;
}

} // namespace superres
