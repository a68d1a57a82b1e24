#pragma once

#include "superres/estimators.hpp"
#include "superres/sweep_config.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace superres {

struct SweepRow {
  SweepMethod method = SweepMethod::Projection;
  std::size_t delta_index = 0;
  SweepStats stats;
};

/// Theory curves at one separation, as variances in absolute units.
struct ReferencePoint {
  double delta = 0.0;
  double qcrlb = 0.0;
  double crlb_ccd = 0.0;        ///< 1 / (N * pixelated classical FI)
  double crlb_projection = 0.0; ///< 1 / (N * binary outcome FI)
  double crlb_conditional = 0.0; ///< 1 / (N * FI of the f_a statistic)
};

struct TrialRecord {
  SweepMethod method = SweepMethod::Projection;
  std::size_t delta_index = 0;
  double delta_true = 0.0;
  std::size_t trial = 0;
  double delta_hat = 0.0;
  bool clamped = false;
};

struct SweepResult {
  SweepConfig config;
  std::uint64_t photon_budget = 0;
  double qcrlb = 0.0;
  std::vector<SweepRow> rows;  ///< method-major, then delta index
  std::vector<ReferencePoint> reference;
  std::vector<TrialRecord> trials;  ///< filled when config.dump_trials
  std::string version;
  std::string started_utc;
  std::string finished_utc;
  double wall_seconds = 0.0;
  std::size_t workers = 1;
};

/// stream id of one simulated acquisition: method in the top byte, delta
/// index in bits 32..55, trial in the low 32 bits.
std::uint64_t trial_stream_id(SweepMethod method, std::size_t delta_index, std::size_t trial);

SweepResult run_sweep(const SweepConfig& config);

/// Header `method,delta_true,n_trials,mean,std,bias,mse,mse_over_qcrlb,crlb_ratio,clamp_count`.
void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_provenance_json(const SweepResult& result, std::ostream& out);
void write_trials_csv(const SweepResult& result, std::ostream& out);

const char* library_version() noexcept;

} // namespace superres
