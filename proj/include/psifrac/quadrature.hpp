#pragma once

// Integration engine: globally adaptive Gauss-Kronrod (10/21) quadrature and
// a power-substitution wrapper for weakly singular endpoint kernels.

#include <functional>

namespace psifrac {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

enum class SingularEnd { lo, hi };

/// Maximum number of panels before NonConvergence is raised.
inline constexpr int max_quad_panels = 1 << 14;

/// Default tolerances: fixtures and unit tests use the tight one, the
/// inequality harness the looser one.
inline constexpr double fixture_tol = 1e-9;
inline constexpr double harness_tol = 1e-7;

/// Integral of g over [lo, hi] to absolute tolerance `tol`, or relative
/// tolerance `rel_tol` if that is looser.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(tol, rel_tol * |value|, roundoff floor). The refinement sequence does
/// not depend on `tol`, so a looser tolerance never costs more evaluations.
/// Throws ParamError for lo >= hi or tol <= 0, EvalError when g returns a
/// non-finite value, NonConvergence after max_quad_panels panels.
QuadResult integrate_adaptive(const std::function<double(double)>& g, double lo, double hi, double tol,
                              double rel_tol = 0.0);

/// Integral of w(u) g(u) over [lo, hi] with w(u) = (hi - u)^gamma
/// (singular_at == hi) or (u - lo)^gamma (singular_at == lo), gamma > -1.
///
/// The substitution v = (hi - u)^(gamma + 1) turns the integral into
/// (1/(gamma+1)) * int_0^{(hi-lo)^(gamma+1)} g(hi - v^(1/(gamma+1))) dv, which
/// has no singular factor. Non-negative integer gamma is integrated directly.
/// `rel_tol` is passed through unchanged. Throws ParamError if gamma <= -1.
QuadResult integrate_endpoint_singular(const std::function<double(double)>& g, double lo, double hi,
                                       double gamma, SingularEnd singular_at, double tol, double rel_tol = 0.0);

/// Gamma function.
double gamma_fn(double x);

} // namespace psifrac
