#include "superres/modes.hpp"

#include "superres/errors.hpp"
#include "superres/fisher.hpp"
#include "superres/numerics.hpp"
#include "sinc_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace superres {

using std::numbers::pi;

std::string_view to_string(ModeLabel label) noexcept {
  switch (label) {
    case ModeLabel::Psf: return "psf";
    case ModeLabel::OptimalAntisym: return "optimal";
    case ModeLabel::Custom: return "custom";
  }
  return "unknown";
}

Mode::Mode(ModeLabel label, Field field)
    : label_(label), field_(std::move(field)), norm_check_(inner_product(field_, field_, 0.0)) {}

double OutcomeProbabilities::probability(ModeLabel label) const noexcept {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return per_mode[i];
  return 0.0;
}

Mode psf_mode(const PsfModel& psf) { return Mode(ModeLabel::Psf, field_of(psf)); }

Mode optimal_mode(const PsfModel& psf) {
  switch (psf.kind()) {
    case PsfKind::Gaussian: {
      const double sigma = psf.width();
      const double norm = 1.0 / (std::pow(2.0 * pi, 0.25) * std::pow(sigma, 1.5));
      auto amp = [sigma, norm](double x) { return norm * x * std::exp(-x * x / (4.0 * sigma * sigma)); };
      return Mode(ModeLabel::OptimalAntisym, Field{amp, psf.truncation_radius(), std::nullopt, {}});
    }
    case PsfKind::Sinc: {
      // -psi'/sqrt(F) with F = pi^2 / (3 w^2).
      const double w = psf.width();
      const double scale = std::sqrt(3.0 / w);
      auto amp = [w, scale](double x) { return -scale * detail::sinc_u_prime(pi * x / w); };
      const double band = pi / w;
      const double spectral = std::sqrt(3.0 * w) * w / pi;  // sqrt(w) / sqrt(F)
      Spectrum spectrum{band, [band, spectral](double k) {
                          return std::abs(k) <= band ? std::complex<double>(0.0, -k * spectral)
                                                     : std::complex<double>(0.0, 0.0);
                        }};
      return Mode(ModeLabel::OptimalAntisym, Field{amp, psf.truncation_radius(), spectrum, {}});
    }
    case PsfKind::Tabulated: break;
  }
  const double fi = quantum_fisher(psf);
  if (!(fi > 1e-300) || !std::isfinite(fi))
    throw DegenerateError("optimal_mode: PSF derivative vanishes (zero quantum Fisher information)");
  const double inv = 1.0 / std::sqrt(fi);
  auto amp = [psf, inv](double x) { return -inv * psf.derivative(x); };
  const auto bp = psf.breakpoints();
  return Mode(ModeLabel::OptimalAntisym, Field{amp, psf.truncation_radius(), std::nullopt,
                                               std::vector<double>(bp.begin(), bp.end())});
}

Mode make_custom_mode(std::function<double(double)> amplitude, double support_radius,
                      bool normalize) {
  if (!(support_radius > 0.0)) throw ParameterError("custom mode: support radius must be positive");
  if (!amplitude) throw ParameterError("custom mode: empty amplitude");
  Field field{std::move(amplitude), support_radius, std::nullopt, {}};
  if (normalize) {
    const double norm = inner_product(field, field, 0.0);
    if (!(norm > 0.0)) throw DegenerateError("custom mode: zero norm");
    const double scale = 1.0 / std::sqrt(norm);
    field.amplitude = [inner = std::move(field.amplitude), scale](double x) { return scale * inner(x); };
  }
  return Mode(ModeLabel::Custom, std::move(field));
}

double overlap(const Mode& mode, const PsfModel& psf, double shift) {
  return inner_product(mode.field(), field_of(psf), shift);
}

double mode_inner_product(const Mode& a, const Mode& b) {
  return inner_product(a.field(), b.field(), 0.0);
}

OutcomeProbabilities outcome_probabilities(const PsfModel& psf, std::span<const Mode> modes,
                                           double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw ParameterError("outcome_probabilities: delta must be non-negative");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      const double ip = mode_inner_product(modes[i], modes[j]);
      if (std::abs(ip) > 1e-6) {
        std::ostringstream msg;
        msg << "outcome_probabilities: modes " << i << " and " << j
            << " are not orthogonal (inner product " << ip << ")";
        throw ModelError(msg.str());
      }
    }
  }
  OutcomeProbabilities out;
  out.delta = delta;
  const Field psi = field_of(psf);
  double total = 0.0;
  for (const Mode& m : modes) {
    const double plus = inner_product(m.field(), psi, 0.5 * delta);
    const double minus = inner_product(m.field(), psi, -0.5 * delta);
    const double p = 0.5 * (plus * plus + minus * minus);
    out.labels.push_back(m.label());
    out.per_mode.push_back(p);
    total += p;
  }
  out.p_lost = 1.0 - total;
  return out;
}

std::optional<OutcomeProbabilities> analytic_outcome_probabilities(const PsfModel& psf,
                                                                   double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw ParameterError("outcome probabilities: delta must be non-negative");
  OutcomeProbabilities out;
  out.delta = delta;
  out.labels = {ModeLabel::Psf, ModeLabel::OptimalAntisym};
  switch (psf.kind()) {
    case PsfKind::Gaussian: {
      const double sigma = psf.width();
      const double t = delta * delta / (16.0 * sigma * sigma);
      const double e = std::exp(-t);
      out.per_mode = {e, t * e};
      out.p_lost = -std::expm1(-t) - t * e;
      return out;
    }
    case PsfKind::Sinc: {
      const double v = pi * delta / (2.0 * psf.width());
      const double j0 = detail::sinc_u(v);
      const double j1 = -detail::sinc_u_prime(v);
      out.per_mode = {j0 * j0, 3.0 * j1 * j1};
      out.p_lost = 1.0 - out.per_mode[0] - out.per_mode[1];
      return out;
    }
    case PsfKind::Tabulated: break;
  }
  return std::nullopt;
}

OutcomeProbabilities standard_outcome_probabilities(const PsfModel& psf, double delta) {
  if (auto exact = analytic_outcome_probabilities(psf, delta)) return *exact;
  const Mode modes[] = {psf_mode(psf), optimal_mode(psf)};
  return outcome_probabilities(psf, modes, delta);
}

double binary_outcome_fisher(const PsfModel& psf, double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw ParameterError("binary_outcome_fisher: delta must be non-negative");
  if (delta < 1e-6 * psf.width()) return quantum_fisher(psf);
  const double h = 1e-4 * delta;
  const double p = standard_outcome_probabilities(psf, delta).p_a();
  const double p_plus = standard_outcome_probabilities(psf, delta + h).p_a();
  const double p_minus = standard_outcome_probabilities(psf, delta - h).p_a();
  if (!(p > 0.0) || !(p < 1.0)) return quantum_fisher(psf);
  const double dp = (p_plus - p_minus) / (2.0 * h);
  return dp * dp / (p * (1.0 - p));
}

namespace {

struct ProbabilityDerivatives {
  double p_0, p_a, p_lost;
  double d_0, d_a, d_lost;
};

ProbabilityDerivatives probability_derivatives(const PsfModel& psf, double delta) {
  const double h = 1e-4 * delta;
  const auto c = standard_outcome_probabilities(psf, delta);
  const auto hi = standard_outcome_probabilities(psf, delta + h);
  const auto lo = standard_outcome_probabilities(psf, delta - h);
  return {c.p_0(),
          c.p_a(),
          c.p_lost,
          (hi.p_0() - lo.p_0()) / (2.0 * h),
          (hi.p_a() - lo.p_a()) / (2.0 * h),
          (hi.p_lost - lo.p_lost) / (2.0 * h)};
}

} // namespace

double trinomial_outcome_fisher(const PsfModel& psf, double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw ParameterError("trinomial_outcome_fisher: delta must be non-negative");
  if (delta < 1e-6 * psf.width()) return quantum_fisher(psf);
  const auto d = probability_derivatives(psf, delta);
  double f = 0.0;
  for (auto [p, dp] : {std::pair{d.p_0, d.d_0}, {d.p_a, d.d_a}, {d.p_lost, d.d_lost}})
    if (p > 1e-15) f += dp * dp / p;
  return f;
}

double conditional_outcome_fisher(const PsfModel& psf, double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw ParameterError("conditional_outcome_fisher: delta must be non-negative");
  if (delta < 1e-6 * psf.width()) return quantum_fisher(psf);
  const auto d = probability_derivatives(psf, delta);
  const double m = d.p_0 + d.p_a;
  const double r = d.p_a / m;
  const double dr = (d.d_a * d.p_0 - d.p_a * d.d_0) / (m * m);
  if (!(r > 0.0) || !(r < 1.0)) return quantum_fisher(psf);
  return m * dr * dr / (r * (1.0 - r));
}

double antisymmetric_peak_separation(const PsfModel& psf) {
  if (psf.kind() == PsfKind::Gaussian) return 4.0 * psf.width();
  const double step = 0.05 * psf.width();
  const double limit = std::max(10.0 * psf.width(), step * 4.0);
  auto p_a = [&](double d) { return standard_outcome_probabilities(psf, d).p_a(); };
  double prev = p_a(0.0);
  for (double d = step; d <= limit; d += step) {
    const double cur = p_a(d);
    if (cur < prev) {
      const double lo = std::max(0.0, d - 2.0 * step);
      return numerics::golden_section_maximize(p_a, lo, d, 1e-10 * psf.width());
    }
    prev = cur;
  }
  throw NumericalError("antisymmetric_peak_separation: p_a did not peak within 10 widths", limit, step);
}

} // namespace superres
