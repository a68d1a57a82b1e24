#pragma once

#include "superres/psf.hpp"
#include "superres/simulation.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superres {

enum class SweepMethod { Projection, Direct };

std::string_view to_string(SweepMethod method) noexcept;
SweepMethod parse_sweep_method(std::string_view name);

/// Separations and pixel grids are given in units of the PSF width.
struct SweepConfig {
  PsfKind psf_kind = PsfKind::Gaussian;
  double width = 1.0;
  std::string psf_file;          ///< two-column amplitude table, tabulated PSF only
  double sinc_truncation = 60.0; ///< in widths

  double delta_start = 0.2;
  double delta_stop = 2.0;
  double delta_step = 0.2;

  std::size_t n_trials = 500;
  std::uint64_t photon_budget = 100000;
  PhotonModel photon_model = PhotonModel::PoissonMeanN;
  std::vector<SweepMethod> methods{SweepMethod::Projection, SweepMethod::Direct};
  std::uint64_t seed = 1;

  std::size_t ccd_pixels = 1024;
  double ccd_half_width = 8.0;

  std::optional<EmccdParams> emccd;

  /// 0 = hardware concurrency. SUPERRES_WORKERS overrides at run time.
  std::size_t workers = 0;
  bool dump_trials = false;

  /// Defaults for the PSF kind: Gaussian 0.2..2.0 step 0.2 over 1024 pixels
  /// spanning +-8; sinc 0.067..0.67 step 0.067 over 2560 pixels spanning +-128.
  static SweepConfig defaults_for(PsfKind kind);

  PsfModel make_psf() const;
  /// Absolute separations delta_start*width, ... up to delta_stop*width.
  std::vector<double> deltas() const;
  std::vector<double> pixel_edges() const;
  bool has_method(SweepMethod m) const noexcept;
  /// ConfigError on any violated invariant.
  void validate() const;

  /// key = value pairs, in file order, suitable for echoing.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Flat "key = value" lines; '#' starts a comment; strings may be quoted.
/// The psf key, when present, selects the defaults the other keys override.
/// Unknown keys, repeated keys and malformed values raise ConfigError.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

/// start + k * step rounded to 12 decimals, so 0.2 + 0.1 prints as 0.3.
double unit_grid_point(double start, double step, std::size_t k);

/// Worker count after applying the SUPERRES_WORKERS override.
std::size_t effective_workers(const SweepConfig& config);

} // namespace superres
