#pragma once

#include "superres/modes.hpp"
#include "superres/psf.hpp"
#include "superres/rng.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace superres {

enum class PhotonModel { FixedN, PoissonMeanN };

std::string_view to_string(PhotonModel model) noexcept;
PhotonModel parse_photon_model(std::string_view name);

/// Two equal-intensity incoherent sources at +/- delta_true / 2.
struct SceneConfig {
  double delta_true = 0.0;
  PsfModel psf;
  std::uint64_t photon_budget = 100000;
  PhotonModel photon_model = PhotonModel::PoissonMeanN;

  void validate() const;
};

/// Electron-multiplying CCD readout: each photoelectron is multiplied by an
/// exponentially distributed gain of mean `gain`; Gaussian read noise is
/// added to the analog sum and the analog value saturates at pixel_capacity.
struct EmccdParams {
  double gain = 100.0;
  double readout_sigma = 0.0;
  double pixel_capacity = std::numeric_limits<double>::infinity();

  void validate() const;
};

struct ProjectionOutcome {
  /// Photons that physically reached each channel.
  std::uint64_t n_0 = 0;
  std::uint64_t n_a = 0;
  std::uint64_t n_lost = 0;
  /// Counts recovered from the detector; equal to n_0 / n_a without EMCCD.
  std::uint64_t recovered_0 = 0;
  std::uint64_t recovered_a = 0;
  /// Post-gain analog signal (zero without EMCCD).
  double analog_0 = 0.0;
  double analog_a = 0.0;

  std::uint64_t total() const noexcept { return n_0 + n_a + n_lost; }
};

struct CcdFrame {
  std::vector<double> pixel_edges;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const noexcept;
};

/// One acquisition of the two-channel mode projection. probs must have been
/// evaluated at scene.delta_true (ModelError otherwise).
ProjectionOutcome simulate_projection(const SceneConfig& scene, const OutcomeProbabilities& probs,
                                      const std::optional<EmccdParams>& emccd, RngStream& rng);

/// Applies the EMCCD gain and read noise to n photoelectrons; returns
/// {analog, recovered count}.
std::pair<double, std::uint64_t> emccd_readout(std::uint64_t n, const EmccdParams& emccd,
                                               RngStream& rng);

/// One direct-imaging frame. Requires the grid to hold >= 99.9% of the image.
CcdFrame simulate_ccd(const SceneConfig& scene, std::span<const double> pixel_edges,
                      RngStream& rng);

/// Same, with pixel probabilities precomputed by pixel_probabilities().
CcdFrame simulate_ccd(const SceneConfig& scene, std::span<const double> pixel_edges,
                      std::span<const double> pixel_probs, RngStream& rng);

} // namespace superres
