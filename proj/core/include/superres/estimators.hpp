#pragma once

#include "superres/psf.hpp"
#include "superres/simulation.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace superres {

enum class EstimateMethod { ProjectionInversion, DirectMle };

std::string_view to_string(EstimateMethod method) noexcept;

struct EstimateRecord {
  double delta_hat = 0.0;
  EstimateMethod method = EstimateMethod::ProjectionInversion;
  /// The estimate was pinned to the end of the admissible range.
  bool clamped = false;
  std::int64_t trial_id = 0;
};

/// Inverts the conditional antisymmetric frequency f_a = n_a / (n_0 + n_a)
/// against p_a / (p_a + p_0) on the monotone branch [0, delta_peak].
class ProjectionInverter {
public:
  explicit ProjectionInverter(PsfModel psf);

  const PsfModel& psf() const noexcept { return psf_; }
  double branch_limit() const noexcept { return delta_peak_; }
  double conditional_ratio(double delta) const;

  EstimateRecord estimate(const ProjectionOutcome& outcome, std::int64_t trial_id = 0) const;
  EstimateRecord estimate_from_counts(std::uint64_t n_0, std::uint64_t n_a,
                                      std::int64_t trial_id = 0) const;

private:
  PsfModel psf_;
  double delta_peak_;
  double ratio_at_peak_;
};

EstimateRecord estimate_from_projection(const ProjectionOutcome& outcome, const PsfModel& psf);

/// Maximum-likelihood separation from a direct-imaging frame, with the
/// centroid known to be 0. The likelihood is conditioned on photons landing
/// in the grid. A 64-point scan over [0, 4 width] is followed by a
/// golden-section refinement to 1e-6 width.
class DirectMleEstimator {
public:
  static constexpr std::size_t kCoarsePoints = 64;
  static constexpr double kRangeWidths = 4.0;

  DirectMleEstimator(PsfModel psf, std::vector<double> pixel_edges);

  const PsfModel& psf() const noexcept { return psf_; }
  std::span<const double> pixel_edges() const noexcept { return edges_; }
  double upper_bound() const noexcept { return kRangeWidths * psf_.width(); }

  double log_likelihood(const CcdFrame& frame, double delta) const;
  EstimateRecord estimate(const CcdFrame& frame, std::int64_t trial_id = 0) const;

private:
  void check_frame(const CcdFrame& frame) const;
  double log_likelihood_sparse(std::span<const std::size_t> pixels,
                               std::span<const std::uint64_t> counts, double delta) const;

  PsfModel psf_;
  std::vector<double> edges_;
  std::vector<double> coarse_deltas_;
  // coarse_log_q_[k * n_pixels + i] = log(q_i(delta_k) / Q(delta_k))
  std::vector<double> coarse_log_q_;
};

EstimateRecord estimate_direct_mle(const CcdFrame& frame, const PsfModel& psf);

struct SweepStats {
  double delta_true = 0.0;
  std::size_t n_trials = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double bias = 0.0;
  double mse = 0.0;
  double mse_over_qcrlb = 0.0;
  double crlb_direct_over_qcrlb = std::numeric_limits<double>::quiet_NaN();
  std::size_t clamp_count = 0;
};

/// Mean, sample standard deviation, bias and mean-squared error of the
/// estimates, with the MSE expressed in units of the supplied qCRLB.
SweepStats aggregate(std::span<const EstimateRecord> records, double delta_true, double qcrlb,
                     double crlb_direct = std::numeric_limits<double>::quiet_NaN());

} // namespace superres
