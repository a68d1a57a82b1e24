#include "superres/estimators.hpp"

#include "superres/errors.hpp"
#include "superres/modes.hpp"
#include "superres/numerics.hpp"
#include "superres/pixels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace superres {

std::string_view to_string(EstimateMethod method) noexcept {
  return method == EstimateMethod::ProjectionInversion ? "projection" : "direct";
}

// ---------------------------------------------------------------------------
// Projection inversion

ProjectionInverter::ProjectionInverter(PsfModel psf)
    : psf_(std::move(psf)), delta_peak_(antisymmetric_peak_separation(psf_)),
      ratio_at_peak_(conditional_ratio(delta_peak_)) {}

double ProjectionInverter::conditional_ratio(double delta) const {
  const auto probs = standard_outcome_probabilities(psf_, delta);
  const double pa = probs.p_a();
  const double denom = pa + probs.p_0();
  return denom > 0.0 ? pa / denom : 1.0;
}

EstimateRecord ProjectionInverter::estimate(const ProjectionOutcome& outcome,
                                            std::int64_t trial_id) const {
  return estimate_from_counts(outcome.recovered_0, outcome.recovered_a, trial_id);
}

EstimateRecord ProjectionInverter::estimate_from_counts(std::uint64_t n_0, std::uint64_t n_a,
                                                        std::int64_t trial_id) const {
  if (n_0 + n_a == 0) throw DataError("projection estimate: no photons in the monitored channels");
  EstimateRecord rec;
  rec.method = EstimateMethod::ProjectionInversion;
  rec.trial_id = trial_id;
  const double f_a = static_cast<double>(n_a) / static_cast<double>(n_0 + n_a);
  if (f_a == 0.0) return rec;
  if (f_a >= ratio_at_peak_) {
    rec.delta_hat = delta_peak_;
    rec.clamped = true;
    return rec;
  }
  auto g = [&](double d) { return conditional_ratio(d) - f_a; };
  rec.delta_hat = numerics::find_root_monotone(g, 0.0, delta_peak_, 1e-9 * psf_.width());
  return rec;
}

EstimateRecord estimate_from_projection(const ProjectionOutcome& outcome, const PsfModel& psf) {
  return ProjectionInverter(psf).estimate(outcome);
}

// ---------------------------------------------------------------------------
// Direct-imaging maximum likelihood

namespace {

// int_a^b I given the tail masses at a and b, matching PsfModel::interval_mass.
inline double mass_from_tails(double a, double tail_a, double b, double tail_b) {
  if (b <= 0.0) return tail_b - tail_a;
  if (a >= 0.0) return tail_a - tail_b;
  return 1.0 - tail_a - tail_b;
}

} // namespace

DirectMleEstimator::DirectMleEstimator(PsfModel psf, std::vector<double> pixel_edges)
    : psf_(std::move(psf)), edges_(std::move(pixel_edges)) {
  validate_pixel_edges(edges_);
  const std::size_t n = edges_.size() - 1;
  coarse_deltas_.resize(kCoarsePoints);
  coarse_log_q_.resize(kCoarsePoints * n);
  for (std::size_t k = 0; k < kCoarsePoints; ++k) {
    const double d = upper_bound() * static_cast<double>(k) / static_cast<double>(kCoarsePoints - 1);
    coarse_deltas_[k] = d;
    const auto q = pixel_probabilities(psf_, d, edges_);
    const double log_cover = std::log(grid_coverage(psf_, d, edges_));
    for (std::size_t i = 0; i < n; ++i)
      coarse_log_q_[k * n + i] = std::log(q[i]) - log_cover;
  }
}

void DirectMleEstimator::check_frame(const CcdFrame& frame) const {
  if (frame.counts.size() + 1 != edges_.size() || frame.pixel_edges.size() != edges_.size())
    throw ParameterError("direct MLE: frame grid does not match the estimator grid");
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (frame.pixel_edges[i] != edges_[i])
      throw ParameterError("direct MLE: frame grid does not match the estimator grid");
  if (frame.total() == 0) throw DataError("direct MLE: frame holds no photons");
}

double DirectMleEstimator::log_likelihood_sparse(std::span<const std::size_t> pixels,
                                                 std::span<const std::uint64_t> counts,
                                                 double delta) const {
  const double h = 0.5 * delta;
  double total = 0.0;
  double ll = 0.0;
  // Pixels are sorted, so a shared edge between neighbours is evaluated once.
  std::size_t cached_edge = std::numeric_limits<std::size_t>::max();
  double cached_minus = 0.0;
  double cached_plus = 0.0;
  for (std::size_t j = 0; j < pixels.size(); ++j) {
    const std::size_t i = pixels[j];
    const double a = edges_[i];
    const double b = edges_[i + 1];
    double ta_minus, ta_plus;
    if (cached_edge == i) {
      ta_minus = cached_minus;
      ta_plus = cached_plus;
    } else {
      ta_minus = psf_.tail_mass(a - h);
      ta_plus = psf_.tail_mass(a + h);
    }
    const double tb_minus = psf_.tail_mass(b - h);
    const double tb_plus = psf_.tail_mass(b + h);
    cached_edge = i + 1;
    cached_minus = tb_minus;
    cached_plus = tb_plus;
    const double q = 0.5 * (mass_from_tails(a - h, ta_minus, b - h, tb_minus) +
                            mass_from_tails(a + h, ta_plus, b + h, tb_plus));
    const double c = static_cast<double>(counts[j]);
    ll += c * std::log(q);
    total += c;
  }
  ll -= total * std::log(grid_coverage(psf_, delta, edges_));
  return ll;
}

double DirectMleEstimator::log_likelihood(const CcdFrame& frame, double delta) const {
  check_frame(frame);
  std::vector<std::size_t> pixels;
  std::vector<std::uint64_t> counts;
  for (std::size_t i = 0; i < frame.counts.size(); ++i) {
    if (frame.counts[i] == 0) continue;
    pixels.push_back(i);
    counts.push_back(frame.counts[i]);
  }
  return log_likelihood_sparse(pixels, counts, delta);
}

EstimateRecord DirectMleEstimator::estimate(const CcdFrame& frame, std::int64_t trial_id) const {
  check_frame(frame);
  const std::size_t n = edges_.size() - 1;
  std::vector<std::size_t> pixels;
  std::vector<std::uint64_t> counts;
  for (std::size_t i = 0; i < n; ++i) {
    if (frame.counts[i] == 0) continue;
    pixels.push_back(i);
    counts.push_back(frame.counts[i]);
  }

  std::size_t best = 0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < kCoarsePoints; ++k) {
    const double* row = coarse_log_q_.data() + k * n;
    double ll = 0.0;
    for (std::size_t j = 0; j < pixels.size(); ++j)
      ll += static_cast<double>(counts[j]) * row[pixels[j]];
    if (ll > best_ll) {
      best_ll = ll;
      best = k;
    }
  }

  const double lo = coarse_deltas_[best == 0 ? 0 : best - 1];
  const double hi = coarse_deltas_[std::min(best + 1, kCoarsePoints - 1)];
  auto ll = [&](double d) { return log_likelihood_sparse(pixels, counts, d); };
  const double tol = 1e-6 * psf_.width();

  EstimateRecord rec;
  rec.method = EstimateMethod::DirectMle;
  rec.trial_id = trial_id;
  rec.delta_hat = std::clamp(numerics::golden_section_maximize(ll, lo, hi, tol), 0.0, upper_bound());
  rec.clamped = rec.delta_hat >= upper_bound() - tol;
  return rec;
}

EstimateRecord estimate_direct_mle(const CcdFrame& frame, const PsfModel& psf) {
  return DirectMleEstimator(psf, frame.pixel_edges).estimate(frame);
}

// ---------------------------------------------------------------------------

SweepStats aggregate(std::span<const EstimateRecord> records, double delta_true, double qcrlb,
                     double crlb_direct) {
  if (records.size() < 2) throw ParameterError("aggregate: at least two records are required");
  if (!(qcrlb > 0.0)) throw ParameterError("aggregate: qcrlb must be positive");
  SweepStats s;
  s.delta_true = delta_true;
  s.n_trials = records.size();
  const double n = static_cast<double>(records.size());
  double sum = 0.0;
  double sq_err = 0.0;
  for (const auto& r : records) {
    sum += r.delta_hat;
    const double e = r.delta_hat - delta_true;
    sq_err += e * e;
    if (r.clamped) ++s.clamp_count;
  }
  s.mean = sum / n;
  double var = 0.0;
  for (const auto& r : records) {
    const double d = r.delta_hat - s.mean;
    var += d * d;
  }
  s.stddev = std::sqrt(var / (n - 1.0));
  s.bias = s.mean - delta_true;
  s.mse = sq_err / n;
  s.mse_over_qcrlb = s.mse / qcrlb;
  if (std::isfinite(crlb_direct)) s.crlb_direct_over_qcrlb = crlb_direct / qcrlb;
  return s;
}

} // namespace superres
