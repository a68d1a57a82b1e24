#pragma once

#include "superres/psf.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace superres {

/// <psi|P^2|psi> = int psi'(x)^2 dx: the quantum Fisher information per
/// detected photon for the separation delta (sources at +/- delta/2).
/// Independent of delta. Units: length^-2.
double quantum_fisher(const PsfModel& psf);

/// Variance floor 1 / (n_photons * quantum_fisher) for any unbiased estimator of delta.
double qcrlb(const PsfModel& psf, std::uint64_t n_photons);

/// Per-photon Fisher information of direct intensity detection,
/// int (d rho/d delta)^2 / rho dx, with the integrand set to zero where
/// rho < 1e-300.
double classical_fisher_exact(const PsfModel& psf, double delta);

struct SmallSeparationCoefficient {
  /// c in F_cl(delta) ~ c * delta^2, i.e. (1/16) int I''^2 / I dx.
  double value = 0.0;
  /// Set when the integral grows without bound as neighbourhoods of the
  /// zeros of I are shrunk; value then holds the truncated-domain estimate.
  bool divergent = false;
};

SmallSeparationCoefficient classical_fisher_smalld(const PsfModel& psf);

/// sum_i (dq_i/d delta)^2 / q_i over a uniform grid of n_pixels centred on 0.
/// Throws ParameterError when the grid holds less than 99.9% of rho_delta.
double pixelated_classical_fisher(const PsfModel& psf, double delta, double pixel_width,
                                  std::size_t n_pixels);
double pixelated_classical_fisher(const PsfModel& psf, double delta,
                                  std::span<const double> edges);

struct ClassicalFisherPoint {
  double delta = 0.0;
  double exact = 0.0;
};

struct FisherReport {
  double quantum_fi_per_photon = 0.0;
  double qcrlb_per_photon = 0.0;
  std::uint64_t n_photons = 1;
  double qcrlb = 0.0;
  SmallSeparationCoefficient smalld;
  std::vector<ClassicalFisherPoint> classical_fi_exact;
};

FisherReport fisher_report(const PsfModel& psf, std::uint64_t n_photons,
                           std::span<const double> deltas);

} // namespace superres
