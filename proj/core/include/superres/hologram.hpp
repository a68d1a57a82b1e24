#pragma once

#include "superres/modes.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace superres {

/// Uniform sample grid x_i = -half_width + (i + 1/2) * pitch, symmetric about 0.
struct HologramGrid {
  std::size_t n_samples = 4096;
  double half_width = 1.0;

  double pitch() const noexcept { return 2.0 * half_width / static_cast<double>(n_samples); }
  double x(std::size_t i) const noexcept {
    return -half_width + (static_cast<double>(i) + 0.5) * pitch();
  }
  void validate() const;
};

/// Amplitude transmission mask recorded from the interference of a tilted
/// reference wave with a target mode.
struct HologramMask {
  std::vector<double> samples;       ///< transmission in [0, 1]
  double carrier_frequency = 0.0;    ///< cycles per length
  double grid_pitch = 0.0;           ///< length per sample
  double mode_bandwidth = 0.0;       ///< RMS spectral width of the encoded mode, cycles per length

  HologramGrid grid() const noexcept;
};

/// RMS spectral width sqrt(int f^2 |m~(f)|^2 df) of a unit-norm mode, in cycles per length.
double mode_bandwidth(const Mode& mode);

std::vector<double> sample_on_grid(const std::function<double(double)>& field,
                                   const HologramGrid& grid);

/// t(x) = |r exp(2 pi i carrier x) + mode(x)|^2 with r = max |mode|, rescaled
/// affinely onto [0, 1]. Requires >= 8 samples per carrier period, a carrier
/// of at least 4x the mode bandwidth and a grid covering the mode support.
HologramMask synthesize(const Mode& mode, double carrier, const HologramGrid& grid);

/// On-axis intensity of the first diffraction order: |sum_j t_j u_j
/// exp(-2 pi i carrier x_j) dx|^2, proportional to |int mode(x) u(x) dx|^2.
double first_order_readout(const HologramMask& mask, std::span<const double> input);

/// Incoherent illumination: intensities of the individual fields add.
double incoherent_first_order_readout(const HologramMask& mask,
                                      std::span<const std::vector<double>> inputs);

/// |DFT|^2 of the mask, bins k = 0 .. n/2 at frequency k / (n * pitch).
std::vector<double> mask_power_spectrum(const HologramMask& mask);

/// Two-column "x transmission" text with '#' header lines carrying the
/// carrier, pitch and mode bandwidth.
void write_mask_text(const HologramMask& mask, std::ostream& out);
HologramMask read_mask_text(std::istream& in);

/// Binary 8-bit portable graymap; the 1-D profile is repeated on every row.
void write_mask_pgm(const HologramMask& mask, std::ostream& out, std::size_t rows = 1);

} // namespace superres
