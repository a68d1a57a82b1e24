#include "superres/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace superres {

Field field_of(const PsfModel& psf) {
  const auto bp = psf.breakpoints();
  return Field{[psf](double x) { return psf.amplitude(x); }, psf.truncation_radius(),
               psf.spectrum(), std::vector<double>(bp.begin(), bp.end())};
}

double inner_product(const Field& f, const Field& g, double shift,
                     const numerics::QuadratureSpec& spec) {
  constexpr int kPanels = 16;
  if (f.spectrum && g.spectrum) {
    const double band = std::min(f.spectrum->band_limit, g.spectrum->band_limit);
    const auto& fs = f.spectrum->value;
    const auto& gs = g.spectrum->value;
    auto integrand = [&](double k) {
      const std::complex<double> phase(std::cos(k * shift), -std::sin(k * shift));
      return (std::conj(fs(k)) * gs(k) * phase).real();
    };
    return numerics::integrate_panels(integrand, -band, band, 2.0 * band / kPanels, spec) /
           (2.0 * std::numbers::pi);
  }
  const double lo = std::max(-f.support_radius, shift - g.support_radius);
  const double hi = std::min(f.support_radius, shift + g.support_radius);
  if (!(lo < hi)) return 0.0;
  auto integrand = [&](double x) { return f.amplitude(x) * g.amplitude(x - shift); };
  std::vector<double> breaks(f.breakpoints);
  for (double b : g.breakpoints) breaks.push_back(b + shift);
  return numerics::integrate_panels(integrand, lo, hi, (hi - lo) / kPanels, spec, breaks);
}

} // namespace superres
