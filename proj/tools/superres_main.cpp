// superres: command-line front end for the separation-estimation library.

#include "superres/errors.hpp"
#include "superres/fisher.hpp"
#include "superres/hologram.hpp"
#include "superres/modes.hpp"
#include "superres/pixels.hpp"
#include "superres/rng.hpp"
#include "superres/simulation.hpp"
#include "superres/estimators.hpp"
#include "superres/sweep.hpp"
#include "superres/sweep_config.hpp"
#include "superres/text_io.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace superres;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct PsfArgs {
  std::string kind = "gaussian";
  double width = 1.0;
  std::string file;

  void add_to(CLI::App* app) {
    app->add_option("--psf", kind, "gaussian, sinc or tabulated")->capture_default_str();
    app->add_option("--width", width, "sigma (gaussian) or w (sinc)")->capture_default_str();
    app->add_option("--psf-file", file, "two-column amplitude table for --psf tabulated");
  }

  PsfModel make() const {
    const PsfKind k = parse_psf_kind(kind);
    switch (k) {
    case PsfKind::Gaussian: return make_gaussian(width);
    case PsfKind::Sinc: return make_sinc(width);
    case PsfKind::Tabulated: {
      if (file.empty()) throw ConfigError("--psf tabulated needs --psf-file");
      const auto rows = read_two_column_file(file);
      return make_tabulated(rows);
    }
    }
    throw ConfigError("unsupported psf");
  }
};

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  return out;
}

std::string fmt(double v) { return format_double(v); }

// --- fisher ---------------------------------------------------------------

struct FisherArgs {
  PsfArgs psf;
  std::uint64_t photons = 100000;
  double start = 0.1, stop = 2.0, step = 0.1;
};

void run_fisher(const FisherArgs& a) {
  const PsfModel psf = a.psf.make();
  if (!(a.step > 0.0) || a.stop < a.start) throw ConfigError("bad delta grid");
  std::vector<double> deltas;
  for (std::size_t k = 0;; ++k) {
    const double d = unit_grid_point(a.start, a.step, k);
    if (d > a.stop + 1e-9 * a.step) break;
    deltas.push_back(d * psf.width());
  }
  const FisherReport r = fisher_report(psf, a.photons, deltas);
  std::cout << "psf " << to_string(psf.kind()) << " width " << fmt(psf.width()) << '\n';
  std::cout << "quantum_fisher_per_photon " << fmt(r.quantum_fi_per_photon) << '\n';
  std::cout << "photons " << r.n_photons << '\n';
  std::cout << "qcrlb " << fmt(r.qcrlb) << '\n';
  std::cout << "smalld_coefficient " << fmt(r.smalld.value)
            << (r.smalld.divergent ? " divergent" : "") << '\n';
  std::cout << "# delta classical_fisher_exact\n";
  for (const auto& p : r.classical_fi_exact) std::cout << fmt(p.delta) << ' ' << fmt(p.exact) << '\n';
}

// --- modes export ---------------------------------------------------------

struct ModesArgs {
  PsfArgs psf;
  std::string which = "both";
  std::size_t samples = 1001;
  double half_width = 8.0;
  std::string prefix = "mode";
};

void run_modes_export(const ModesArgs& a) {
  const PsfModel psf = a.psf.make();
  std::vector<Mode> modes;
  if (a.which == "psf" || a.which == "both") modes.push_back(psf_mode(psf));
  if (a.which == "optimal" || a.which == "both") modes.push_back(optimal_mode(psf));
  if (modes.empty()) throw ConfigError("--mode must be psf, optimal or both");
  if (a.samples < 2) throw ConfigError("--samples must be >= 2");
  const double r = a.half_width * psf.width();
  for (const auto& m : modes) {
    std::vector<AmplitudeSample> rows(a.samples);
    for (std::size_t i = 0; i < a.samples; ++i) {
      const double x = -r + 2.0 * r * static_cast<double>(i) / static_cast<double>(a.samples - 1);
      rows[i] = {x, m.amplitude(x)};
    }
    const std::string path = a.prefix + "_" + std::string(to_string(m.label())) + ".txt";
    auto out = open_out(path);
    write_two_column(out, rows, "x amplitude, " + std::string(to_string(m.label())) + " mode");
    std::cout << path << '\n';
  }
}

// --- simulate -------------------------------------------------------------

struct EmccdArgs {
  bool on = false;
  double gain = 100.0;
  double readout_sigma = 0.0;
  double capacity = 0.0;

  void add_to(CLI::App* app) {
    app->add_flag("--emccd", on, "apply EMCCD gain and read noise");
    app->add_option("--emccd-gain", gain)->capture_default_str();
    app->add_option("--emccd-readout-sigma", readout_sigma)->capture_default_str();
    app->add_option("--emccd-capacity", capacity, "full-well in electrons, 0 = unlimited");
  }

  std::optional<EmccdParams> make() const {
    if (!on) return std::nullopt;
    EmccdParams p;
    p.gain = gain;
    p.readout_sigma = readout_sigma;
    if (capacity > 0.0) p.pixel_capacity = capacity;
    p.validate();
    return p;
  }
};

struct SimulateArgs {
  PsfArgs psf;
  EmccdArgs emccd;
  double delta = 0.2;
  std::uint64_t photons = 100000;
  std::string photon_model = "poisson";
  std::string method = "projection";
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::size_t pixels = 1024;
  double ccd_half_width = 8.0;
};

void run_simulate(const SimulateArgs& a) {
  const PsfModel psf = a.psf.make();
  SceneConfig scene{a.delta * psf.width(), psf, a.photons, parse_photon_model(a.photon_model)};
  scene.validate();
  RngStream rng(a.seed, a.stream);
  std::cout << "# delta_true " << fmt(scene.delta_true) << " photons " << a.photons << ' '
            << to_string(scene.photon_model) << " seed " << a.seed << " stream " << a.stream
            << '\n';
  if (a.method == "projection") {
    const auto probs = standard_outcome_probabilities(psf, scene.delta_true);
    const auto o = simulate_projection(scene, probs, a.emccd.make(), rng);
    std::cout << "n_0 " << o.n_0 << "\nn_a " << o.n_a << "\nn_lost " << o.n_lost << '\n';
    std::cout << "recovered_0 " << o.recovered_0 << "\nrecovered_a " << o.recovered_a << '\n';
    std::cout << "analog_0 " << fmt(o.analog_0) << "\nanalog_a " << fmt(o.analog_a) << '\n';
    if (o.recovered_0 + o.recovered_a > 0) {
      const auto e = estimate_from_projection(o, psf);
      std::cout << "delta_hat " << fmt(e.delta_hat) << (e.clamped ? " clamped" : "") << '\n';
    }
  } else if (a.method == "direct") {
    const double pitch = 2.0 * a.ccd_half_width * psf.width() / static_cast<double>(a.pixels);
    const auto edges = uniform_pixel_edges(pitch, a.pixels);
    const auto frame = simulate_ccd(scene, edges, rng);
    std::cout << "# pixel_lo pixel_hi count\n";
    for (std::size_t i = 0; i < frame.counts.size(); ++i)
      std::cout << fmt(edges[i]) << ' ' << fmt(edges[i + 1]) << ' ' << frame.counts[i] << '\n';
    if (frame.total() > 0) {
      const auto e = DirectMleEstimator(psf, edges).estimate(frame);
      std::cout << "# delta_hat " << fmt(e.delta_hat) << (e.clamped ? " clamped" : "") << '\n';
    }
  } else {
    throw ConfigError("--method must be projection or direct");
  }
}

// --- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string out;
  std::string provenance;
  std::string trials;
  std::size_t workers = 0;
};

void run_sweep_cmd(const SweepArgs& a) {
  SweepConfig cfg = load_sweep_config(a.config);
  if (!a.trials.empty()) cfg.dump_trials = true;
  if (a.workers > 0) cfg.workers = a.workers;
  std::string trials_path = a.trials;
  if (cfg.dump_trials && trials_path.empty()) {
    if (a.out.empty()) throw ConfigError("dump_trials needs --dump-trials FILE or --out");
    trials_path = a.out + ".trials.csv";
  }
  const SweepResult r = run_sweep(cfg);
  if (a.out.empty()) {
    write_sweep_csv(r, std::cout);
  } else {
    auto out = open_out(a.out);
    write_sweep_csv(r, out);
  }
  if (!a.provenance.empty()) {
    auto out = open_out(a.provenance);
    write_provenance_json(r, out);
  }
  if (cfg.dump_trials) {
    auto out = open_out(trials_path);
    write_trials_csv(r, out);
  }
}

// --- hologram -------------------------------------------------------------

struct SynthArgs {
  PsfArgs psf;
  std::string mode = "optimal";
  double carrier = 0.0;
  std::size_t samples = 4096;
  double half_width = 0.0;
  std::string text_out = "mask.txt";
  std::string pgm_out;
  std::size_t pgm_rows = 64;
};

void run_synth(const SynthArgs& a) {
  const PsfModel psf = a.psf.make();
  const Mode mode = a.mode == "psf" ? psf_mode(psf) : optimal_mode(psf);
  if (a.mode != "psf" && a.mode != "optimal") throw ConfigError("--mode must be psf or optimal");
  HologramGrid grid{a.samples, a.half_width > 0.0 ? a.half_width : mode.support_radius()};
  double carrier = a.carrier;
  if (carrier <= 0.0) carrier = 10.0 * mode_bandwidth(mode);
  const HologramMask mask = synthesize(mode, carrier, grid);
  {
    auto out = open_out(a.text_out);
    write_mask_text(mask, out);
  }
  if (!a.pgm_out.empty()) {
    auto out = open_out(a.pgm_out);
    write_mask_pgm(mask, out, a.pgm_rows);
  }
  std::cout << "carrier_frequency " << fmt(mask.carrier_frequency) << '\n';
  std::cout << "mode_bandwidth " << fmt(mask.mode_bandwidth) << '\n';
  std::cout << "grid_pitch " << fmt(mask.grid_pitch) << '\n';
}

struct ReadoutArgs {
  PsfArgs psf;
  std::string mask;
  std::vector<double> shifts{0.0};
};

void run_readout(const ReadoutArgs& a) {
  const PsfModel psf = a.psf.make();
  std::ifstream in(a.mask);
  if (!in) throw ConfigError("cannot open " + a.mask);
  const HologramMask mask = read_mask_text(in);
  const HologramGrid grid = mask.grid();
  std::cout << "# shift readout\n";
  for (double s : a.shifts) {
    const double shift = s * psf.width();
    const auto u = sample_on_grid([&](double x) { return psf.amplitude(x - shift); }, grid);
    std::cout << fmt(shift) << ' ' << fmt(first_order_readout(mask, u)) << '\n';
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-point separation estimation: Fisher bounds, mode projections, sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  FisherArgs fisher;
  auto* fisher_cmd = app.add_subcommand("fisher", "quantum and classical Fisher information");
  fisher.psf.add_to(fisher_cmd);
  fisher_cmd->add_option("--photons", fisher.photons)->capture_default_str();
  fisher_cmd->add_option("--delta-start", fisher.start, "in widths")->capture_default_str();
  fisher_cmd->add_option("--delta-stop", fisher.stop, "in widths")->capture_default_str();
  fisher_cmd->add_option("--delta-step", fisher.step, "in widths")->capture_default_str();

  ModesArgs modes;
  auto* modes_cmd = app.add_subcommand("modes", "projection modes");
  modes_cmd->require_subcommand(1);
  auto* export_cmd = modes_cmd->add_subcommand("export", "write sampled modes as two-column text");
  modes.psf.add_to(export_cmd);
  export_cmd->add_option("--mode", modes.which, "psf, optimal or both")->capture_default_str();
  export_cmd->add_option("--samples", modes.samples)->capture_default_str();
  export_cmd->add_option("--half-width", modes.half_width, "in widths")->capture_default_str();
  export_cmd->add_option("--prefix", modes.prefix, "output file prefix")->capture_default_str();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "one simulated acquisition");
  sim.psf.add_to(sim_cmd);
  sim.emccd.add_to(sim_cmd);
  sim_cmd->add_option("--delta", sim.delta, "separation in widths")->capture_default_str();
  sim_cmd->add_option("--photons", sim.photons)->capture_default_str();
  sim_cmd->add_option("--photon-model", sim.photon_model, "fixed or poisson")->capture_default_str();
  sim_cmd->add_option("--method", sim.method, "projection or direct")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
  sim_cmd->add_option("--stream", sim.stream)->capture_default_str();
  sim_cmd->add_option("--pixels", sim.pixels)->capture_default_str();
  sim_cmd->add_option("--ccd-half-width", sim.ccd_half_width, "in widths")->capture_default_str();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo sweep over separations");
  sweep_cmd->add_option("--config", sweep.config, "key = value config file")->required();
  sweep_cmd->add_option("--out", sweep.out, "CSV path (default stdout)");
  sweep_cmd->add_option("--provenance", sweep.provenance, "JSON provenance path");
  sweep_cmd->add_option("--dump-trials", sweep.trials, "per-trial estimates CSV path");
  sweep_cmd->add_option("--workers", sweep.workers, "worker threads, 0 = config/auto");

  auto* holo_cmd = app.add_subcommand("hologram", "amplitude hologram masks");
  holo_cmd->require_subcommand(1);
  SynthArgs synth;
  auto* synth_cmd = holo_cmd->add_subcommand("synth", "synthesize a mask for a mode");
  synth.psf.add_to(synth_cmd);
  synth_cmd->add_option("--mode", synth.mode, "psf or optimal")->capture_default_str();
  synth_cmd->add_option("--carrier", synth.carrier, "cycles per length, default 10x bandwidth");
  synth_cmd->add_option("--samples", synth.samples)->capture_default_str();
  synth_cmd->add_option("--half-width", synth.half_width, "absolute, default mode support");
  synth_cmd->add_option("--out", synth.text_out, "two-column mask text")->capture_default_str();
  synth_cmd->add_option("--pgm", synth.pgm_out, "8-bit PGM image");
  synth_cmd->add_option("--pgm-rows", synth.pgm_rows)->capture_default_str();
  ReadoutArgs readout;
  auto* readout_cmd = holo_cmd->add_subcommand("readout", "first-order readout of shifted PSFs");
  readout.psf.add_to(readout_cmd);
  readout_cmd->add_option("--mask", readout.mask, "mask text file")->required();
  readout_cmd->add_option("--shift", readout.shifts, "input shifts in widths")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*fisher_cmd) run_fisher(fisher);
    else if (*export_cmd) run_modes_export(modes);
    else if (*sim_cmd) run_simulate(sim);
    else if (*sweep_cmd) run_sweep_cmd(sweep);
    else if (*synth_cmd) run_synth(synth);
    else if (*readout_cmd) run_readout(readout);
  } catch (const NumericalError& e) {
    std::cerr << "superres: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const BracketError& e) {
    std::cerr << "superres: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DegenerateError& e) {
    std::cerr << "superres: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "superres: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
