#include "superres/simulation.hpp"

#include "superres/errors.hpp"
#include "superres/pixels.hpp"
#include "superres/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

namespace superres {

std::string_view to_string(PhotonModel model) noexcept {
  return model == PhotonModel::FixedN ? "fixed" : "poisson";
}

PhotonModel parse_photon_model(std::string_view name) {
  if (name == "fixed" || name == "FixedN") return PhotonModel::FixedN;
  if (name == "poisson" || name == "PoissonMeanN") return PhotonModel::PoissonMeanN;
  throw ParameterError("unknown photon model '" + std::string(name) + "'");
}

void SceneConfig::validate() const {
  if (!(delta_true >= 0.0) || !std::isfinite(delta_true))
    throw ParameterError("scene: delta_true must be non-negative");
}

void EmccdParams::validate() const {
  if (!(gain >= 1.0) || !std::isfinite(gain)) throw ParameterError("emccd: gain must be >= 1");
  if (!(readout_sigma >= 0.0)) throw ParameterError("emccd: readout sigma must be non-negative");
  if (!(pixel_capacity > 0.0)) throw ParameterError("emccd: pixel capacity must be positive");
}

std::uint64_t CcdFrame::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

std::uint64_t draw_total(const SceneConfig& scene, RngStream& rng) {
  if (scene.photon_model == PhotonModel::FixedN) return scene.photon_budget;
  return sample_poisson(static_cast<double>(scene.photon_budget), rng);
}

} // namespace

std::pair<double, std::uint64_t> emccd_readout(std::uint64_t n, const EmccdParams& emccd,
                                               RngStream& rng) {
  // A sum of n Exponential(gain) draws is Gamma(n, gain).
  double analog = n > 0 ? sample_gamma(static_cast<double>(n), emccd.gain, rng) : 0.0;
  analog += sample_normal(0.0, emccd.readout_sigma, rng);
  analog = std::clamp(analog, 0.0, emccd.pixel_capacity);
  const double recovered = std::round(analog / emccd.gain);
  return {analog, static_cast<std::uint64_t>(std::max(recovered, 0.0))};
}

ProjectionOutcome simulate_projection(const SceneConfig& scene, const OutcomeProbabilities& probs,
                                      const std::optional<EmccdParams>& emccd, RngStream& rng) {
  scene.validate();
  if (std::abs(probs.delta - scene.delta_true) > 1e-12 * std::max(1.0, scene.delta_true)) {
    std::ostringstream msg;
    msg << "simulate_projection: probabilities evaluated at delta = " << probs.delta
        << " but the scene has delta = " << scene.delta_true;
    throw ModelError(msg.str());
  }
  if (emccd) emccd->validate();

  double p0 = std::clamp(probs.p_0(), 0.0, 1.0);
  double pa = std::clamp(probs.p_a(), 0.0, 1.0);
  double lost = 1.0 - p0 - pa;
  if (lost < 0.0) {
    // Quadrature round-off can push p_0 + p_a a hair above one.
    const double s = p0 + pa;
    p0 /= s;
    pa /= s;
    lost = 0.0;
  }
  const double channel_probs[] = {p0, pa, lost};

  ProjectionOutcome out;
  const std::uint64_t total = draw_total(scene, rng);
  const auto counts = sample_multinomial(total, channel_probs, rng);
  out.n_0 = counts[0];
  out.n_a = counts[1];
  out.n_lost = counts[2];
  if (emccd) {
    std::tie(out.analog_0, out.recovered_0) = emccd_readout(out.n_0, *emccd, rng);
    std::tie(out.analog_a, out.recovered_a) = emccd_readout(out.n_a, *emccd, rng);
  } else {
    out.recovered_0 = out.n_0;
    out.recovered_a = out.n_a;
  }
  return out;
}

CcdFrame simulate_ccd(const SceneConfig& scene, std::span<const double> pixel_edges,
                      RngStream& rng) {
  scene.validate();
  require_grid_coverage(scene.psf, scene.delta_true, pixel_edges);
  const auto q = pixel_probabilities(scene.psf, scene.delta_true, pixel_edges);
  return simulate_ccd(scene, pixel_edges, q, rng);
}

CcdFrame simulate_ccd(const SceneConfig& scene, std::span<const double> pixel_edges,
                      std::span<const double> pixel_probs, RngStream& rng) {
  validate_pixel_edges(pixel_edges);
  if (pixel_probs.size() + 1 != pixel_edges.size())
    throw ParameterError("simulate_ccd: one probability per pixel required");

  CcdFrame frame;
  frame.pixel_edges.assign(pixel_edges.begin(), pixel_edges.end());
  frame.counts.assign(pixel_probs.size(), 0);
  if (scene.photon_budget == 0) return frame;

  if (scene.photon_model == PhotonModel::PoissonMeanN) {
    const double n = static_cast<double>(scene.photon_budget);
    for (std::size_t i = 0; i < pixel_probs.size(); ++i)
      frame.counts[i] = sample_poisson(n * std::max(pixel_probs[i], 0.0), rng);
    return frame;
  }

  // Fixed N: multinomial over the pixels plus an off-grid bin.
  std::vector<double> cells(pixel_probs.begin(), pixel_probs.end());
  double inside = 0.0;
  for (double& c : cells) {
    c = std::max(c, 0.0);
    inside += c;
  }
  if (inside > 1.0) {
    for (double& c : cells) c /= inside;
    inside = 1.0;
  }
  cells.push_back(std::max(0.0, 1.0 - inside));
  // Re-close the sum exactly for the multinomial precondition.
  const double sum = std::accumulate(cells.begin(), cells.end(), 0.0);
  cells.back() += 1.0 - sum;
  if (cells.back() < 0.0) cells.back() = 0.0;
  const auto counts = sample_multinomial(scene.photon_budget, cells, rng);
  std::copy(counts.begin(), counts.end() - 1, frame.counts.begin());
  return frame;
}

} // namespace superres
