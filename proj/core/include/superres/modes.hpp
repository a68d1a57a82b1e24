#pragma once

#include "superres/field.hpp"
#include "superres/psf.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace superres {

enum class ModeLabel { Psf, OptimalAntisym, Custom };

std::string_view to_string(ModeLabel label) noexcept;

/// A normalized real projection wavefunction.
class Mode {
public:
  Mode(ModeLabel label, Field field);

  ModeLabel label() const noexcept { return label_; }
  double amplitude(double x) const { return field_.amplitude(x); }
  double support_radius() const noexcept { return field_.support_radius; }
  const Field& field() const noexcept { return field_; }
  /// int |mode|^2 dx, measured when the mode was built.
  double norm_check() const noexcept { return norm_check_; }

private:
  ModeLabel label_;
  Field field_;
  double norm_check_;
};

/// The PSF itself as a projection mode (zeroth Hermite-Gaussian for the Gaussian).
Mode psf_mode(const PsfModel& psf);

/// -psi'(x) / sqrt(F), F the quantum Fisher information. The sign makes
/// overlap(mode, psf, s) positive for small s > 0. Built-ins use closed forms:
/// the Gaussian gives the first Hermite-Gaussian x exp(-x^2/4 sigma^2) / ((2 pi)^(1/4) sigma^(3/2)).
/// Throws DegenerateError when psi' vanishes.
Mode optimal_mode(const PsfModel& psf);

/// Wraps an arbitrary real amplitude supported on [-support_radius, support_radius],
/// rescaled to unit norm when normalize is set.
Mode make_custom_mode(std::function<double(double)> amplitude, double support_radius,
                      bool normalize = true);

/// int mode(x) psi(x - shift) dx.
double overlap(const Mode& mode, const PsfModel& psf, double shift);

double mode_inner_product(const Mode& a, const Mode& b);

/// Probabilities that a photon from the two-source image at separation delta
/// is found in each monitored mode; p_lost is the mass in neither.
struct OutcomeProbabilities {
  double delta = 0.0;
  std::vector<ModeLabel> labels;
  std::vector<double> per_mode;
  double p_lost = 0.0;

  /// Probability of the first mode carrying the label; 0 when absent.
  double probability(ModeLabel label) const noexcept;
  double p_a() const noexcept { return probability(ModeLabel::OptimalAntisym); }
  double p_0() const noexcept { return probability(ModeLabel::Psf); }
};

/// p_m = [overlap(m, psi, delta/2)^2 + overlap(m, psi, -delta/2)^2] / 2 for
/// each mode, by quadrature. Modes must be pairwise orthogonal within 1e-6
/// (ModelError otherwise).
OutcomeProbabilities outcome_probabilities(const PsfModel& psf, std::span<const Mode> modes,
                                           double delta);

/// The {Psf, OptimalAntisym} pair. Built-in PSFs use closed forms:
/// Gaussian p_0 = e^-t, p_a = t e^-t with t = delta^2 / (16 sigma^2);
/// sinc p_0 = j0(v)^2, p_a = 3 j1(v)^2 with v = pi delta / (2 w).
/// Tabulated PSFs fall back to outcome_probabilities.
OutcomeProbabilities standard_outcome_probabilities(const PsfModel& psf, double delta);

/// Closed-form branch of standard_outcome_probabilities, when one exists.
std::optional<OutcomeProbabilities> analytic_outcome_probabilities(const PsfModel& psf,
                                                                   double delta);

/// Per-photon Fisher information of the binary measurement {a, not a}:
/// (dp_a/d delta)^2 / (p_a (1 - p_a)), derivative by central differences.
double binary_outcome_fisher(const PsfModel& psf, double delta);

/// Per-photon Fisher information of the full trinomial model {0, a, lost}:
/// sum over outcomes of (dp/d delta)^2 / p.
double trinomial_outcome_fisher(const PsfModel& psf, double delta);

/// Per-photon Fisher information carried by f_a = n_a / (n_0 + n_a) once
/// the monitored total is conditioned on: (p_0 + p_a) r'^2 / (r (1 - r))
/// with r = p_a / (p_0 + p_a).
double conditional_outcome_fisher(const PsfModel& psf, double delta);

/// First maximum of p_a(delta): the end of the branch on which p_a, and the
/// conditional ratio p_a / (p_a + p_0), increase monotonically. 4 sigma for the Gaussian.
double antisymmetric_peak_separation(const PsfModel& psf);

} // namespace superres
