#include "superres/numerics.hpp"

#include "superres/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_roots.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <sstream>
#include <vector>

namespace superres::numerics {
namespace {

void silence_gsl() {
  static const bool once = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)once;
}

// GSL is C; exceptions must not unwind through it.
struct Trampoline {
  const RealFunction* f;
  std::exception_ptr failure;

  static double call(double x, void* self) {
    auto* t = static_cast<Trampoline*>(self);
    if (t->failure) return 0.0;
    try {
      return (*t->f)(x);
    } catch (...) {
      t->failure = std::current_exception();
      return 0.0;
    }
  }
};

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

gsl_integration_workspace* thread_workspace(std::size_t size) {
  thread_local std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws;
  thread_local std::size_t ws_size = 0;
  if (!ws || ws_size != size) {
    ws.reset(gsl_integration_workspace_alloc(size));
    ws_size = size;
  }
  return ws.get();
}

struct SolverDeleter {
  void operator()(gsl_root_fsolver* s) const { gsl_root_fsolver_free(s); }
};

} // namespace

void QuadratureSpec::validate() const {
  if (!(absolute_tol > 0.0) || !(relative_tol > 0.0))
    throw ParameterError("quadrature tolerances must be positive");
  if (max_subdivisions < 4) throw ParameterError("max_subdivisions must be at least 4");
}

QuadratureResult integrate_with_error(const RealFunction& f, double a, double b,
                                      const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) {
    std::ostringstream msg;
    msg << "integrate: empty or reversed interval [" << a << ", " << b << "]";
    throw ParameterError(msg.str());
  }
  silence_gsl();

  Trampoline t{&f, nullptr};
  gsl_function gf{&Trampoline::call, &t};
  double result = 0.0;
  double abserr = 0.0;
  auto* ws = thread_workspace(spec.max_subdivisions);
  const int status = gsl_integration_qag(&gf, a, b, spec.absolute_tol, spec.relative_tol,
                                         spec.max_subdivisions, GSL_INTEG_GAUSS21, ws, &result,
                                         &abserr);
  const std::size_t used = ws->size;
  if (t.failure) std::rethrow_exception(t.failure);
  if (!std::isfinite(result))
    throw NumericalError("integrate: non-finite integrand", result, abserr);
  if (status != GSL_SUCCESS) {
    // Round-off limited results that still meet the requested bound are fine.
    const double target = std::max(spec.absolute_tol, spec.relative_tol * std::abs(result));
    if (!(status == GSL_EROUND && abserr <= target)) {
      std::ostringstream msg;
      msg << "integrate: " << gsl_strerror(status) << " on [" << a << ", " << b
          << "], estimate " << result << " +/- " << abserr;
      throw NumericalError(msg.str(), result, abserr);
    }
  }
  return {result, abserr, used};
}

double integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec) {
  return integrate_with_error(f, a, b, spec).value;
}

double integrate_panels(const RealFunction& f, double a, double b, double panel_width,
                        const QuadratureSpec& spec, std::span<const double> breakpoints) {
  if (!(panel_width > 0.0)) throw ParameterError("integrate_panels: panel width must be positive");
  if (!(a < b)) throw ParameterError("integrate_panels: empty or reversed interval");
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / panel_width));
  const double h = (b - a) / static_cast<double>(panels);
  std::vector<double> edges;
  edges.reserve(panels + 1 + breakpoints.size());
  for (std::size_t i = 0; i < panels; ++i) edges.push_back(a + h * static_cast<double>(i));
  edges.push_back(b);
  for (double p : breakpoints)
    if (p > a && p < b) edges.push_back(p);
  std::sort(edges.begin(), edges.end());
  const double eps = 1e-12 * (b - a);
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [eps](double x, double y) { return y - x <= eps; }),
              edges.end());
  if (edges.back() != b) edges.back() = b;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) sum += integrate(f, edges[i], edges[i + 1], spec);
  return sum;
}

double find_root_monotone(const RealFunction& g, double lo, double hi, double tol) {
  if (!(lo < hi)) throw ParameterError("find_root_monotone: requires lo < hi");
  if (!(tol > 0.0)) throw ParameterError("find_root_monotone: tolerance must be positive");
  silence_gsl();

  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    std::ostringstream msg;
    msg << "find_root_monotone: no sign change on [" << lo << ", " << hi << "] (g = " << g_lo
        << ", " << g_hi << ")";
    throw BracketError(msg.str());
  }

  Trampoline t{&g, nullptr};
  gsl_function gf{&Trampoline::call, &t};
  std::unique_ptr<gsl_root_fsolver, SolverDeleter> solver(
      gsl_root_fsolver_alloc(gsl_root_fsolver_brent));
  gsl_root_fsolver_set(solver.get(), &gf, lo, hi);

  double root = 0.5 * (lo + hi);
  for (int iter = 0; iter < 500; ++iter) {
    const int status = gsl_root_fsolver_iterate(solver.get());
    if (t.failure) std::rethrow_exception(t.failure);
    if (status != GSL_SUCCESS)
      throw NumericalError("find_root_monotone: solver failure", root, hi - lo);
    root = gsl_root_fsolver_root(solver.get());
    const double a = gsl_root_fsolver_x_lower(solver.get());
    const double b = gsl_root_fsolver_x_upper(solver.get());
    if (b - a <= tol) return root;
    // Brent can park one end; a plain bisection step keeps the width shrinking.
    if (iter > 0 && iter % 40 == 0) {
      const double mid = 0.5 * (a + b);
      const double gm = g(mid);
      if (gm == 0.0) return mid;
      const double ga = g(a);
      if ((ga > 0.0) == (gm > 0.0))
        gsl_root_fsolver_set(solver.get(), &gf, mid, b);
      else
        gsl_root_fsolver_set(solver.get(), &gf, a, mid);
    }
  }
  throw NumericalError("find_root_monotone: iteration limit", root, tol);
}

double golden_section_maximize(const RealFunction& f, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw ParameterError("golden_section_maximize: requires lo <= hi");
  if (!(tol > 0.0)) throw ParameterError("golden_section_maximize: tolerance must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

} // namespace superres::numerics
