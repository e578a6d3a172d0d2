#pragma once

// psi-Riemann-Liouville integrals, psi-Caputo derivatives (both sides) and
// the psi-fractional Taylor formula.

#include "psifrac/func_lib.hpp"
#include "psifrac/psi.hpp"
#include "psifrac/quadrature.hpp"

#include <span>

namespace psifrac {

/// Integer order n attached to alpha > 0: floor(alpha) + 1 for non-integer
/// alpha, alpha itself for integer alpha. Throws ParamError for alpha <= 0.
int integer_order(double alpha);

bool is_integer_order(double alpha);

struct FracParams {
    double alpha = 0.5;
    int n = 1;
    Side side = Side::left;
    Interval interval{};

    static FracParams make(double alpha, Side side, Interval interval);
};

/// I^{alpha,psi}_{a+} f(t) (left) or I^{alpha,psi}_{b-} f(t) (right).
///
/// Integrated in psi-coordinates, (1/Gamma(alpha)) int (psi(t) - u)^(alpha-1)
/// f(psi^{-1}(u)) du, with the kernel singularity removed by substitution.
/// Returns 0 at the anchor. Throws ParamError for alpha <= 0, RangeError for
/// t outside the domain.
double rl_integral(Side side, const ScalarFunction& f, const PsiFunction& psi, double alpha, double t,
                   double tol = fixture_tol);

/// D^{alpha,psi}_{a+} f(t) (left) or D^{alpha,psi}_{b-} f(t) (right), with
/// psi taken from f. Integer alpha returns (+/-1)^n f^{[n]}_psi(t) directly;
/// otherwise the order-n psi-derivative is convolved with the kernel of
/// order n - alpha. Returns 0 at the anchor for non-integer alpha.
/// `tol` is absolute for values up to 1 in magnitude and relative above.
double caputo_derivative(Side side, const TestFunction& f, double alpha, double t, double tol = fixture_tol);

/// t -> caputo_derivative(side, f, alpha, t) as a ScalarFunction.
ScalarFunction caputo_function(Side side, const TestFunction& f, double alpha, double tol = fixture_tol);

/// Left: sum_{k<n} f^{[k]}(a)/k! (psi(t)-psi(a))^k;
/// right: sum_{k<n} (-1)^k f^{[k]}(b)/k! (psi(b)-psi(t))^k.
double taylor_partial_sum(Side side, const TestFunction& f, int n, double t);

struct TaylorTolerances {
    double inner = fixture_tol;
    double outer = harness_tol;
};

/// max over grid of |f(t) - partial_sum(t) - I^{alpha,psi} D^{alpha,psi} f(t)|.
/// The grid loop runs in parallel; `taylor_residual_serial` is the serial
/// reference with identical results.
double taylor_residual(Side side, const TestFunction& f, double alpha, std::span<const double> grid,
                       TaylorTolerances tol = {});
double taylor_residual_serial(Side side, const TestFunction& f, double alpha, std::span<const double> grid,
                              TaylorTolerances tol = {});

} // namespace psifrac
