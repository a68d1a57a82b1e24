#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace superres::numerics {

/// Tolerances for adaptive quadrature. Defaults sit two orders of magnitude
/// below the tightest numeric acceptance tolerance used anywhere (1e-8).
struct QuadratureSpec {
  double absolute_tol = 1e-10;
  double relative_tol = 1e-9;
  std::size_t max_subdivisions = std::size_t{1} << 16;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t subdivisions = 0;
};

using RealFunction = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod quadrature of f over [a, b].
/// Throws NumericalError (with best estimate and bound) when the error
/// target max(absolute_tol, relative_tol * |result|) cannot be reached.
QuadratureResult integrate_with_error(const RealFunction& f, double a, double b,
                                      const QuadratureSpec& spec = {});

double integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec = {});

/// Integrates over [a, b] split into equal panels of at most panel_width.
/// Useful for oscillatory or spiky integrands where one global adaptive
/// pass would spend its budget on a few panels.
/// Breakpoints inside (a, b) become extra panel edges.
double integrate_panels(const RealFunction& f, double a, double b, double panel_width,
                        const QuadratureSpec& spec = {},
                        std::span<const double> breakpoints = {});

/// Root of a continuous monotone g on [lo, hi] (Brent: bisection with secant
/// and inverse-quadratic steps). The returned x lies in a final bracket of
/// width <= tol. Throws BracketError when g(lo) and g(hi) share a strict sign.
double find_root_monotone(const RealFunction& g, double lo, double hi, double tol);

/// Golden-section search for the maximum of a unimodal f on [lo, hi],
/// stopping once the bracket is narrower than tol. Ties resolve to the
/// smaller abscissa.
double golden_section_maximize(const RealFunction& f, double lo, double hi, double tol);

} // namespace superres::numerics
