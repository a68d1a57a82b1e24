#include "superres/sweep.hpp"

#include "superres/errors.hpp"
#include "superres/fisher.hpp"
#include "superres/modes.hpp"
#include "superres/pixels.hpp"
#include "superres/rng.hpp"
#include "superres/text_io.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#ifndef SUPERRES_VERSION
#define SUPERRES_VERSION "0.0.0"
#endif

namespace superres {

const char* library_version() noexcept { return SUPERRES_VERSION; }

std::uint64_t trial_stream_id(SweepMethod method, std::size_t delta_index, std::size_t trial) {
  if (delta_index >= (std::size_t{1} << 24) || trial > 0xffffffffu)
    throw ParameterError("trial_stream_id: index out of range");
  const std::uint64_t m = method == SweepMethod::Projection ? 0 : 1;
  return (m << 56) | (static_cast<std::uint64_t>(delta_index) << 32) |
         static_cast<std::uint64_t>(trial);
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string delta_context(double delta) { return "at delta = " + format_double(delta) + ": "; }

struct DeltaPlan {
  double delta = 0.0;
  SceneConfig scene;
  OutcomeProbabilities probs;
  std::vector<double> pixel_probs;
};

struct Job {
  SweepMethod method;
  std::size_t delta_index;
  std::size_t trial;
};

} // namespace

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult result;
  result.config = config;
  result.photon_budget = config.photon_budget;
  result.version = library_version();
  result.started_utc = utc_now();
  result.workers = effective_workers(config);

  const PsfModel psf = config.make_psf();
  const auto deltas = config.deltas();
  const auto edges = config.pixel_edges();
  result.qcrlb = qcrlb(psf, config.photon_budget);
  const double n = static_cast<double>(config.photon_budget);

  std::vector<DeltaPlan> plans;
  plans.reserve(deltas.size());
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const double d = deltas[k];
    try {
      DeltaPlan p{d, SceneConfig{d, psf, config.photon_budget, config.photon_model},
                  standard_outcome_probabilities(psf, d), {}};
      if (config.has_method(SweepMethod::Direct)) p.pixel_probs = pixel_probabilities(psf, d, edges);
      plans.push_back(std::move(p));
      ReferencePoint ref;
      ref.delta = d;
      ref.qcrlb = result.qcrlb;
      ref.crlb_ccd = 1.0 / (n * pixelated_classical_fisher(psf, d, edges));
      ref.crlb_projection = 1.0 / (n * binary_outcome_fisher(psf, d));
      ref.crlb_conditional = 1.0 / (n * conditional_outcome_fisher(psf, d));
      result.reference.push_back(ref);
    } catch (const NumericalError& e) {
      throw NumericalError(delta_context(d) + e.what(), e.best_estimate(), e.error_bound());
    } catch (const ParameterError& e) {
      throw ConfigError(delta_context(d) + e.what());
    }
  }

  std::optional<ProjectionInverter> inverter;
  std::optional<DirectMleEstimator> mle;
  if (config.has_method(SweepMethod::Projection)) inverter.emplace(psf);
  if (config.has_method(SweepMethod::Direct)) mle.emplace(psf, edges);

  std::vector<Job> jobs;
  jobs.reserve(config.methods.size() * deltas.size() * config.n_trials);
  for (auto method : config.methods)
    for (std::size_t k = 0; k < deltas.size(); ++k)
      for (std::size_t t = 0; t < config.n_trials; ++t) jobs.push_back({method, k, t});

  std::vector<EstimateRecord> estimates(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_job = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;

  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    const DeltaPlan& plan = plans[job.delta_index];
    RngStream rng(config.seed, trial_stream_id(job.method, job.delta_index, job.trial));
    const auto trial_id = static_cast<std::int64_t>(job.trial);
    EstimateRecord rec;
    if (job.method == SweepMethod::Projection) {
      const auto outcome = simulate_projection(plan.scene, plan.probs, config.emccd, rng);
      if (outcome.recovered_0 + outcome.recovered_a == 0) {
        // Nothing detected in either channel: no information, report 0.
        rec = {0.0, EstimateMethod::ProjectionInversion, true, trial_id};
      } else {
        rec = inverter->estimate(outcome, trial_id);
      }
    } else {
      const auto frame = simulate_ccd(plan.scene, edges, plan.pixel_probs, rng);
      if (frame.total() == 0) {
        rec = {0.0, EstimateMethod::DirectMle, true, trial_id};
      } else {
        rec = mle->estimate(frame, trial_id);
      }
    }
    estimates[j] = rec;
  };

  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      try {
        run_job(j);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (j < error_job) {
          error_job = j;
          error = std::current_exception();
        }
        failed.store(true);
      }
    }
  };

  const std::size_t n_workers = std::min(result.workers, std::max<std::size_t>(jobs.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  if (error) {
    const double d = deltas[jobs[error_job].delta_index];
    try {
      std::rethrow_exception(error);
    } catch (const NumericalError& e) {
      throw NumericalError(delta_context(d) + e.what(), e.best_estimate(), e.error_bound());
    } catch (const ModelError& e) {
      throw ModelError(delta_context(d) + e.what());
    } catch (const DataError& e) {
      throw DataError(delta_context(d) + e.what());
    }
  }

  std::size_t j = 0;
  for (auto method : config.methods) {
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      std::span<const EstimateRecord> block(estimates.data() + j, config.n_trials);
      j += config.n_trials;
      const auto& ref = result.reference[k];
      const double own_crlb =
          method == SweepMethod::Projection ? ref.crlb_projection : ref.crlb_ccd;
      result.rows.push_back({method, k, aggregate(block, deltas[k], result.qcrlb, own_crlb)});
      if (config.dump_trials) {
        for (std::size_t t = 0; t < block.size(); ++t)
          result.trials.push_back({method, k, deltas[k], t, block[t].delta_hat, block[t].clamped});
      }
    }
  }

  result.finished_utc = utc_now();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "method,delta_true,n_trials,mean,std,bias,mse,mse_over_qcrlb,crlb_ratio,clamp_count\n";
  for (const auto& row : result.rows) {
    const auto& s = row.stats;
    out << to_string(row.method) << ',' << format_double(s.delta_true) << ',' << s.n_trials << ','
        << format_double(s.mean) << ',' << format_double(s.stddev) << ','
        << format_double(s.bias) << ',' << format_double(s.mse) << ','
        << format_double(s.mse_over_qcrlb) << ',' << format_double(s.crlb_direct_over_qcrlb)
        << ',' << s.clamp_count << '\n';
  }
}

void write_provenance_json(const SweepResult& result, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : result.config.echo()) cfg[k] = v;
  j["config"] = cfg;
  j["seed"] = result.config.seed;
  j["version"] = result.version;
  j["started_utc"] = result.started_utc;
  j["finished_utc"] = result.finished_utc;
  j["wall_seconds"] = result.wall_seconds;
  j["workers"] = result.workers;
  j["photon_budget"] = result.photon_budget;
  j["qcrlb"] = result.qcrlb;
  ordered_json refs = ordered_json::array();
  for (const auto& r : result.reference) {
    refs.push_back({{"delta", r.delta},
                    {"qcrlb", r.qcrlb},
                    {"crlb_ccd", r.crlb_ccd},
                    {"crlb_projection", r.crlb_projection},
                    {"crlb_conditional", r.crlb_conditional}});
  }
  j["reference_curves"] = refs;
  ordered_json rows = ordered_json::array();
  for (const auto& row : result.rows) {
    const auto& s = row.stats;
    rows.push_back({{"method", std::string(to_string(row.method))},
                    {"delta_true", s.delta_true},
                    {"n_trials", s.n_trials},
                    {"mean", s.mean},
                    {"std", s.stddev},
                    {"bias", s.bias},
                    {"mse", s.mse},
                    {"mse_over_qcrlb", s.mse_over_qcrlb},
                    {"crlb_ratio", s.crlb_direct_over_qcrlb},
                    {"clamp_count", s.clamp_count}});
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

void write_trials_csv(const SweepResult& result, std::ostream& out) {
  out << "method,delta_true,trial,delta_hat,clamped\n";
  for (const auto& t : result.trials) {
    out << to_string(t.method) << ',' << format_double(t.delta_true) << ',' << t.trial << ','
        << format_double(t.delta_hat) << ',' << (t.clamped ? 1 : 0) << '\n';
  }
}

} // namespace superres
