#include "superres/hologram.hpp"

#include "superres/errors.hpp"
#include "superres/numerics.hpp"
#include "superres/text_io.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace superres {

using std::numbers::pi;

void HologramGrid::validate() const {
  if (n_samples < 16) throw ParameterError("hologram grid: at least 16 samples required");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw ParameterError("hologram grid: half width must be positive");
}

HologramGrid HologramMask::grid() const noexcept {
  return {samples.size(), 0.5 * grid_pitch * static_cast<double>(samples.size())};
}

double mode_bandwidth(const Mode& mode) {
  const Field& f = mode.field();
  double k2 = 0.0;
  if (f.spectrum) {
    const auto& value = f.spectrum->value;
    const double band = f.spectrum->band_limit;
    k2 = numerics::integrate([&](double k) { return k * k * std::norm(value(k)); }, -band, band) /
         (2.0 * pi);
  } else {
    const double r = f.support_radius;
    const double h = 1e-5 * r;
    auto d2 = [&](double x) {
      const double d = (f.amplitude(x + h) - f.amplitude(x - h)) / (2.0 * h);
      return d * d;
    };
    k2 = numerics::integrate_panels(d2, -r, r, r / 8.0);
  }
  return std::sqrt(k2 / mode.norm_check()) / (2.0 * pi);
}

std::vector<double> sample_on_grid(const std::function<double(double)>& field,
                                   const HologramGrid& grid) {
  grid.validate();
  std::vector<double> out(grid.n_samples);
  for (std::size_t i = 0; i < grid.n_samples; ++i) out[i] = field(grid.x(i));
  return out;
}

HologramMask synthesize(const Mode& mode, double carrier, const HologramGrid& grid) {
  grid.validate();
  if (!(carrier > 0.0) || !std::isfinite(carrier))
    throw ParameterError("hologram: carrier frequency must be positive");
  if (grid.half_width < mode.support_radius() * (1.0 - 1e-12))
    throw ParameterError("hologram: grid does not span the mode support");
  const double samples_per_period = 1.0 / (carrier * grid.pitch());
  if (samples_per_period < 8.0) {
    std::ostringstream msg;
    msg << "hologram: carrier undersampled (" << samples_per_period
        << " samples per period, need >= 8)";
    throw ParameterError(msg.str());
  }
  const double bandwidth = mode_bandwidth(mode);
  if (carrier < 4.0 * bandwidth) {
    std::ostringstream msg;
    msg << "hologram: carrier " << carrier << " is below 4x the mode bandwidth " << bandwidth;
    throw ParameterError(msg.str());
  }

  const auto m = sample_on_grid([&](double x) { return mode.amplitude(x); }, grid);
  double r = 0.0;
  for (double v : m) r = std::max(r, std::abs(v));

  HologramMask mask;
  mask.carrier_frequency = carrier;
  mask.grid_pitch = grid.pitch();
  mask.mode_bandwidth = bandwidth;
  mask.samples.resize(grid.n_samples);
  for (std::size_t i = 0; i < grid.n_samples; ++i) {
    const double phase = 2.0 * pi * carrier * grid.x(i);
    mask.samples[i] = r * r + m[i] * m[i] + 2.0 * r * m[i] * std::cos(phase);
  }
  const auto [lo_it, hi_it] = std::minmax_element(mask.samples.begin(), mask.samples.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  for (double& t : mask.samples) t = span > 0.0 ? (t - lo) / span : 1.0;
  return mask;
}

double first_order_readout(const HologramMask& mask, std::span<const double> input) {
  if (input.size() != mask.samples.size())
    throw ParameterError("hologram readout: input and mask grids differ");
  const double carrier = mask.carrier_frequency;
  const double band_half = carrier / 8.0;
  const double nyquist = 0.5 / mask.grid_pitch;
  // Zero order extends to about twice the mode bandwidth (the |mode|^2 term).
  if (carrier - band_half <= 2.0 * mask.mode_bandwidth || carrier + band_half >= nyquist)
    throw ParameterError("hologram readout: first-order band overlaps the zero order or aliases");

  const HologramGrid grid = mask.grid();
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < input.size(); ++i) {
    const double phase = -2.0 * pi * carrier * grid.x(i);
    acc += mask.samples[i] * input[i] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  acc *= mask.grid_pitch;
  return std::norm(acc);
}

double incoherent_first_order_readout(const HologramMask& mask,
                                      std::span<const std::vector<double>> inputs) {
  double sum = 0.0;
  for (const auto& u : inputs) sum += first_order_readout(mask, u);
  return sum;
}

std::vector<double> mask_power_spectrum(const HologramMask& mask) {
  const int n = static_cast<int>(mask.samples.size());
  if (n < 2) throw ParameterError("mask spectrum: too few samples");
  struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
  };
  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
  std::copy(mask.samples.begin(), mask.samples.end(), in.get());

  // Planner calls are not thread-safe; execution is.
  static std::mutex planner_mutex;
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::vector<double> power(static_cast<std::size_t>(n / 2 + 1));
  for (std::size_t k = 0; k < power.size(); ++k)
    power[k] = out.get()[k][0] * out.get()[k][0] + out.get()[k][1] * out.get()[k][1];
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  return power;
}

void write_mask_text(const HologramMask& mask, std::ostream& out) {
  out << "# hologram mask\n";
  out << "# carrier_frequency = " << format_double(mask.carrier_frequency) << '\n';
  out << "# grid_pitch = " << format_double(mask.grid_pitch) << '\n';
  out << "# mode_bandwidth = " << format_double(mask.mode_bandwidth) << '\n';
  const HologramGrid grid = mask.grid();
  for (std::size_t i = 0; i < mask.samples.size(); ++i)
    out << format_double(grid.x(i)) << ' ' << format_double(mask.samples[i]) << '\n';
}

HologramMask read_mask_text(std::istream& in) {
  HologramMask mask;
  bool have_carrier = false;
  std::vector<AmplitudeSample> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(first + 1, eq - first - 1);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      const double value = parse_double(line.substr(eq + 1));
      if (key == "carrier_frequency") {
        mask.carrier_frequency = value;
        have_carrier = true;
      } else if (key == "mode_bandwidth") {
        mask.mode_bandwidth = value;
      }
      continue;
    }
    std::istringstream ls(line);
    AmplitudeSample s;
    if (!(ls >> s.x >> s.amplitude)) throw DataError("mask file: malformed row '" + line + "'");
    rows.push_back(s);
  }
  if (!have_carrier) throw DataError("mask file: missing carrier_frequency header");
  if (rows.size() < 16) throw DataError("mask file: too few samples");
  mask.samples.reserve(rows.size());
  for (const auto& r : rows) {
    if (!(r.amplitude >= 0.0 && r.amplitude <= 1.0))
      throw DataError("mask file: transmission outside [0, 1]");
    mask.samples.push_back(r.amplitude);
  }
  mask.grid_pitch = (rows.back().x - rows.front().x) / static_cast<double>(rows.size() - 1);
  if (!(mask.grid_pitch > 0.0)) throw DataError("mask file: x must increase");
  return mask;
}

void write_mask_pgm(const HologramMask& mask, std::ostream& out, std::size_t rows) {
  if (rows == 0) throw ParameterError("pgm: at least one row");
  out << "P5\n" << mask.samples.size() << ' ' << rows << "\n255\n";
  std::string row(mask.samples.size(), '\0');
  for (std::size_t i = 0; i < mask.samples.size(); ++i)
    row[i] = static_cast<char>(static_cast<unsigned char>(
        std::lround(std::clamp(mask.samples[i], 0.0, 1.0) * 255.0)));
  for (std::size_t r = 0; r < rows; ++r) out.write(row.data(), static_cast<std::streamsize>(row.size()));
}

} // namespace superres
