#include "superres/estimators.hpp"
#include "superres/fisher.hpp"
#include "superres/hologram.hpp"
#include "superres/modes.hpp"
#include "superres/numerics.hpp"
#include "superres/pixels.hpp"
#include "superres/psf.hpp"
#include "superres/rng.hpp"
#include "superres/simulation.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace superres;

namespace {

void BM_Integrate(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(numerics::integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0));
}
BENCHMARK(BM_Integrate);

void BM_QuantumFisherSinc(benchmark::State& state) {
  const auto psf = make_sinc(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(quantum_fisher(psf));
}
BENCHMARK(BM_QuantumFisherSinc);

void BM_ClassicalFisherGaussian(benchmark::State& state) {
  const auto psf = make_gaussian(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(classical_fisher_exact(psf, 0.5));
}
BENCHMARK(BM_ClassicalFisherGaussian);

void BM_ProjectionInversion(benchmark::State& state) {
  const ProjectionInverter inv(make_sinc(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(inv.estimate_from_counts(99000, 1000));
}
BENCHMARK(BM_ProjectionInversion);

void BM_SimulateProjection(benchmark::State& state) {
  const SceneConfig scene{0.2, make_gaussian(1.0)};
  const auto probs = standard_outcome_probabilities(scene.psf, scene.delta_true);
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_projection(scene, probs, {}, rng));
}
BENCHMARK(BM_SimulateProjection);

struct CcdSetup {
  SceneConfig scene{0.2, make_gaussian(1.0)};
  std::vector<double> edges = uniform_pixel_edges(16.0 / 1024.0, 1024);
  std::vector<double> probs = pixel_probabilities(scene.psf, scene.delta_true, edges);
};

void BM_SimulateCcd(benchmark::State& state) {
  const CcdSetup s;
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_ccd(s.scene, s.edges, s.probs, rng));
}
BENCHMARK(BM_SimulateCcd);

void BM_DirectMle(benchmark::State& state) {
  const CcdSetup s;
  const DirectMleEstimator mle(s.scene.psf, s.edges);
  RngStream rng(1, 0);
  const auto frame = simulate_ccd(s.scene, s.edges, s.probs, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mle.estimate(frame));
}
BENCHMARK(BM_DirectMle);

void BM_HologramReadout(benchmark::State& state) {
  const auto psf = make_gaussian(1.0);
  const HologramGrid grid{4096, 8.0};
  const auto mask = synthesize(optimal_mode(psf), 10.0, grid);
  const auto input = sample_on_grid([&](double x) { return psf.amplitude(x - 0.5); }, grid);
  for (auto _ : state) benchmark::DoNotOptimize(first_order_readout(mask, input));
}
BENCHMARK(BM_HologramReadout);

} // namespace
BENCHMARK_MAIN();
