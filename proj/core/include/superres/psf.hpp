#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace superres {

enum class PsfKind { Gaussian, Sinc, Tabulated };

std::string_view to_string(PsfKind kind) noexcept;
PsfKind parse_psf_kind(std::string_view name);

/// Fourier transform f~(k) = int f(x) exp(-i k x) dx of a band-limited field,
/// zero outside |k| <= band_limit.
struct Spectrum {
  double band_limit = 0.0;
  std::function<std::complex<double>(double)> value;
};

struct AmplitudeSample {
  double x = 0.0;
  double amplitude = 0.0;
};

/// A normalized one-dimensional amplitude point-spread function psi(x).
///
/// Lengths are in whatever unit the caller chose for the width; amplitudes
/// carry length^(-1/2) and Fisher informations length^(-2). Values are
/// immutable and cheap to copy, so a model can be shared across threads.
class PsfModel {
public:
  class Shape;

  explicit PsfModel(std::shared_ptr<const Shape> shape);

  PsfKind kind() const noexcept;
  /// sigma for the Gaussian, w for the sinc, RMS intensity width for tabulated data.
  double width() const noexcept;
  /// Half-width of the domain used for x-space quadrature.
  double truncation_radius() const noexcept;
  bool inversion_symmetric() const noexcept;

  double amplitude(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  /// I(x) = psi(x)^2 and its first two derivatives.
  double intensity(double x) const;
  double intensity_derivative(double x) const;
  double intensity_second_derivative(double x) const;

  /// Intensity mass of the tail beyond x: int_{-inf}^{x} I for x < 0 and
  /// int_{x}^{inf} I for x >= 0. Splitting at the origin keeps far-tail
  /// pixel masses free of cancellation.
  double tail_mass(double x) const;
  /// int_a^b I(x) dx.
  double interval_mass(double a, double b) const;

  /// Exact band-limited spectrum when the model has one (the sinc).
  const std::optional<Spectrum>& spectrum() const noexcept;
  /// Points where the amplitude is only piecewise smooth (spline knots).
  std::span<const double> breakpoints() const noexcept;

private:
  std::shared_ptr<const Shape> shape_;
};

class PsfModel::Shape {
public:
  virtual ~Shape() = default;

  virtual PsfKind kind() const noexcept = 0;
  virtual double width() const noexcept = 0;
  virtual double truncation_radius() const noexcept = 0;
  virtual bool inversion_symmetric() const noexcept = 0;
  virtual double amplitude(double x) const = 0;
  virtual double derivative(double x) const = 0;
  virtual double second_derivative(double x) const = 0;
  virtual double tail_mass(double x) const = 0;
  virtual const std::optional<Spectrum>& spectrum() const noexcept = 0;
  virtual std::span<const double> breakpoints() const noexcept { return {}; }
};

/// psi(x) = (2 pi sigma^2)^(-1/4) exp(-x^2 / (4 sigma^2)), truncated at 8 sigma.
PsfModel make_gaussian(double sigma);

/// psi(x) = w^(-1/2) sinc(pi x / w). Quadrature in x is truncated at
/// truncation_widths * w; inner products use the exact rectangular spectrum.
PsfModel make_sinc(double w, double truncation_widths = 60.0);

/// Natural cubic spline through measured amplitudes, renormalized to unit
/// intensity. Requires at least 16 samples with strictly increasing x.
PsfModel make_tabulated(std::span<const AmplitudeSample> samples);

} // namespace superres
