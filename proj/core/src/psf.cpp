#include "superres/psf.hpp"

#include "superres/errors.hpp"
#include "sinc_series.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace superres {

using std::numbers::pi;

std::string_view to_string(PsfKind kind) noexcept {
  switch (kind) {
    case PsfKind::Gaussian: return "gaussian";
    case PsfKind::Sinc: return "sinc";
    case PsfKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

PsfKind parse_psf_kind(std::string_view name) {
  if (name == "gaussian") return PsfKind::Gaussian;
  if (name == "sinc") return PsfKind::Sinc;
  if (name == "tabulated") return PsfKind::Tabulated;
  throw ParameterError("unknown PSF kind '" + std::string(name) + "'");
}

PsfModel::PsfModel(std::shared_ptr<const Shape> shape) : shape_(std::move(shape)) {
  if (!shape_) throw ParameterError("PsfModel: null shape");
}

PsfKind PsfModel::kind() const noexcept { return shape_->kind(); }
double PsfModel::width() const noexcept { return shape_->width(); }
double PsfModel::truncation_radius() const noexcept { return shape_->truncation_radius(); }
bool PsfModel::inversion_symmetric() const noexcept { return shape_->inversion_symmetric(); }
double PsfModel::amplitude(double x) const { return shape_->amplitude(x); }
double PsfModel::derivative(double x) const { return shape_->derivative(x); }
double PsfModel::second_derivative(double x) const { return shape_->second_derivative(x); }
double PsfModel::tail_mass(double x) const { return shape_->tail_mass(x); }
const std::optional<Spectrum>& PsfModel::spectrum() const noexcept { return shape_->spectrum(); }
std::span<const double> PsfModel::breakpoints() const noexcept { return shape_->breakpoints(); }

double PsfModel::intensity(double x) const {
  const double a = amplitude(x);
  return a * a;
}

double PsfModel::intensity_derivative(double x) const {
  return 2.0 * amplitude(x) * derivative(x);
}

double PsfModel::intensity_second_derivative(double x) const {
  const double d = derivative(x);
  return 2.0 * (d * d + amplitude(x) * second_derivative(x));
}

double PsfModel::interval_mass(double a, double b) const {
  if (b <= a) return 0.0;
  if (b <= 0.0) return tail_mass(b) - tail_mass(a);
  if (a >= 0.0) return tail_mass(a) - tail_mass(b);
  return 1.0 - tail_mass(a) - tail_mass(b);
}

namespace {

class GaussianShape final : public PsfModel::Shape {
public:
  explicit GaussianShape(double sigma)
      : sigma_(sigma), norm_(std::pow(2.0 * pi * sigma * sigma, -0.25)) {}

  PsfKind kind() const noexcept override { return PsfKind::Gaussian; }
  double width() const noexcept override { return sigma_; }
  double truncation_radius() const noexcept override { return 8.0 * sigma_; }
  bool inversion_symmetric() const noexcept override { return true; }

  double amplitude(double x) const override {
    return norm_ * std::exp(-x * x / (4.0 * sigma_ * sigma_));
  }
  double derivative(double x) const override {
    return -x / (2.0 * sigma_ * sigma_) * amplitude(x);
  }
  double second_derivative(double x) const override {
    const double s2 = sigma_ * sigma_;
    return (x * x / (4.0 * s2 * s2) - 1.0 / (2.0 * s2)) * amplitude(x);
  }
  double tail_mass(double x) const override {
    return 0.5 * std::erfc(std::abs(x) / (std::numbers::sqrt2 * sigma_));
  }
  const std::optional<Spectrum>& spectrum() const noexcept override { return none_; }

private:
  double sigma_;
  double norm_;
  std::optional<Spectrum> none_;
};

using detail::sinc_u;
using detail::sinc_u_prime;
using detail::sinc_u_second;

class SincShape final : public PsfModel::Shape {
public:
  SincShape(double w, double truncation_widths)
      : w_(w), radius_(truncation_widths * w), scale_(1.0 / std::sqrt(w)) {
    const double sqrt_w = std::sqrt(w);
    spectrum_ = Spectrum{pi / w, [sqrt_w, band = pi / w](double k) {
                           return std::complex<double>(std::abs(k) <= band ? sqrt_w : 0.0, 0.0);
                         }};
  }

  PsfKind kind() const noexcept override { return PsfKind::Sinc; }
  double width() const noexcept override { return w_; }
  double truncation_radius() const noexcept override { return radius_; }
  bool inversion_symmetric() const noexcept override { return true; }

  double amplitude(double x) const override { return scale_ * sinc_u(pi * x / w_); }
  double derivative(double x) const override {
    return scale_ * (pi / w_) * sinc_u_prime(pi * x / w_);
  }
  double second_derivative(double x) const override {
    const double k = pi / w_;
    return scale_ * k * k * sinc_u_second(pi * x / w_);
  }
  double tail_mass(double x) const override {
    // int_0^u sin^2(t)/t^2 dt = Si(2u) - sin^2(u)/u
    const double u = pi * std::abs(x) / w_;
    if (u == 0.0) return 0.5;
    const double s = std::sin(u);
    return 0.5 - (gsl_sf_Si(2.0 * u) - s * s / u) / pi;
  }
  const std::optional<Spectrum>& spectrum() const noexcept override { return spectrum_; }

private:
  double w_;
  double radius_;
  double scale_;
  std::optional<Spectrum> spectrum_;
};

struct SplineDeleter {
  void operator()(gsl_spline* s) const { gsl_spline_free(s); }
};

// 4-point Gauss-Legendre integrates the squared cubic (degree 6) exactly.
constexpr std::array<double, 4> kGlNodes{-0.8611363115940526, -0.3399810435848563,
                                         0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGlWeights{0.3478548451374538, 0.6521451548625461,
                                           0.6521451548625461, 0.3478548451374538};

class TabulatedShape final : public PsfModel::Shape {
public:
  explicit TabulatedShape(std::span<const AmplitudeSample> samples) {
    const std::size_t n = samples.size();
    if (n < 16) {
      std::ostringstream msg;
      msg << "tabulated PSF needs at least 16 samples, got " << n;
      throw DataError(msg.str());
    }
    xs_.resize(n);
    std::vector<double> ys(n);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      xs_[i] = samples[i].x;
      ys[i] = samples[i].amplitude;
      if (!std::isfinite(xs_[i]) || !std::isfinite(ys[i]))
        throw DataError("tabulated PSF: non-finite sample");
      if (i > 0 && !(xs_[i] > xs_[i - 1]))
        throw DataError("tabulated PSF: abscissae must be strictly increasing (unsorted or duplicate x)");
      max_abs = std::max(max_abs, std::abs(ys[i]));
    }
    if (max_abs == 0.0) throw DataError("tabulated PSF: all amplitudes are zero");

    gsl_set_error_handler_off();
    spline_.reset(gsl_spline_alloc(gsl_interp_cspline, n));
    gsl_spline_init(spline_.get(), xs_.data(), ys.data(), n);

    // Cumulative raw mass at each knot.
    cumulative_.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
      cumulative_[i] = cumulative_[i - 1] + raw_mass(xs_[i - 1], xs_[i]);
    const double total = cumulative_.back();
    if (!(total > 0.0)) throw DataError("tabulated PSF: zero total intensity");
    scale_ = 1.0 / std::sqrt(total);
    for (double& c : cumulative_) c /= total;

    radius_ = std::max(std::abs(xs_.front()), std::abs(xs_.back()));

    double mean = 0.0;
    double second = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double a = xs_[i - 1];
      const double b = xs_[i];
      const double half = 0.5 * (b - a);
      const double mid = 0.5 * (a + b);
      for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
        const double x = mid + half * kGlNodes[q];
        const double y = intensity_raw(x) / total;
        mean += kGlWeights[q] * half * x * y;
        second += kGlWeights[q] * half * x * x * y;
      }
    }
    width_ = std::sqrt(std::max(second - mean * mean, 0.0));
    if (!(width_ > 0.0)) throw DataError("tabulated PSF: degenerate width");

    symmetric_ = true;
    for (std::size_t i = 0; i < n && symmetric_; ++i) {
      if (std::abs(amplitude(-xs_[i]) - amplitude(xs_[i])) > 1e-9 * max_abs * scale_)
        symmetric_ = false;
    }
  }

  PsfKind kind() const noexcept override { return PsfKind::Tabulated; }
  double width() const noexcept override { return width_; }
  double truncation_radius() const noexcept override { return radius_; }
  bool inversion_symmetric() const noexcept override { return symmetric_; }

  double amplitude(double x) const override {
    if (x < xs_.front() || x > xs_.back()) return 0.0;
    return scale_ * gsl_spline_eval(spline_.get(), x, nullptr);
  }
  double derivative(double x) const override {
    if (x < xs_.front() || x > xs_.back()) return 0.0;
    return scale_ * gsl_spline_eval_deriv(spline_.get(), x, nullptr);
  }
  double second_derivative(double x) const override {
    if (x < xs_.front() || x > xs_.back()) return 0.0;
    return scale_ * gsl_spline_eval_deriv2(spline_.get(), x, nullptr);
  }
  double tail_mass(double x) const override {
    const double below = cumulative_below(x);
    return x < 0.0 ? below : 1.0 - below;
  }
  const std::optional<Spectrum>& spectrum() const noexcept override { return none_; }
  std::span<const double> breakpoints() const noexcept override { return xs_; }

private:
  double intensity_raw(double x) const {
    const double y = gsl_spline_eval(spline_.get(), x, nullptr);
    return y * y;
  }

  double raw_mass(double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t q = 0; q < kGlNodes.size(); ++q)
      sum += kGlWeights[q] * intensity_raw(mid + half * kGlNodes[q]);
    return sum * half;
  }

  double cumulative_below(double x) const {
    if (x <= xs_.front()) return 0.0;
    if (x >= xs_.back()) return 1.0;
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const auto k = static_cast<std::size_t>(it - xs_.begin()) - 1;
    return cumulative_[k] + raw_mass(xs_[k], x) * scale_ * scale_;
  }

  std::vector<double> xs_;
  std::unique_ptr<gsl_spline, SplineDeleter> spline_;
  std::vector<double> cumulative_;
  double scale_ = 1.0;
  double radius_ = 0.0;
  double width_ = 0.0;
  bool symmetric_ = false;
  std::optional<Spectrum> none_;
};

} // namespace

PsfModel make_gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ParameterError("make_gaussian: sigma must be positive");
  return PsfModel(std::make_shared<GaussianShape>(sigma));
}

PsfModel make_sinc(double w, double truncation_widths) {
  if (!(w > 0.0) || !std::isfinite(w)) throw ParameterError("make_sinc: w must be positive");
  if (!(truncation_widths > 0.0)) throw ParameterError("make_sinc: truncation must be positive");
  return PsfModel(std::make_shared<SincShape>(w, truncation_widths));
}

PsfModel make_tabulated(std::span<const AmplitudeSample> samples) {
  return PsfModel(std::make_shared<TabulatedShape>(samples));
}

} // namespace superres
