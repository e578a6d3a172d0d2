#pragma once

// Sup norm, psi-weighted L^p norms and the regime coefficients that turn a
// Caputo-derivative norm into an Iyengar-type bound.

#include "psifrac/psi.hpp"
#include "psifrac/quadrature.hpp"

#include <string>
#include <string_view>

namespace psifrac {

enum class Regime { Linf, L1psi, Lqpsi };

std::string_view to_string(Regime regime);

/// A norm regime together with its Hoelder pair. Only Lqpsi uses p and q
/// (1/p + 1/q = 1, p, q > 1).
struct RegimeSpec {
    Regime regime = Regime::Linf;
    double p = 2.0;
    double q = 2.0;

    static RegimeSpec linf() { return {Regime::Linf, 1.0, 1.0}; }
    static RegimeSpec l1psi() { return {Regime::L1psi, 1.0, 1.0}; }
    /// Lq regime from the Hoelder exponent p of the kernel factor; q = p/(p-1).
    static RegimeSpec lqpsi(double p);

    std::string describe() const;
};

struct NormValue {
    Regime regime = Regime::Linf;
    double q = 1.0;
    double value = 0.0;
    /// Grid points used (sup norm) or integrand evaluations (integral norms).
    int estimate_grid = 0;
};

inline constexpr int default_sup_grid = 2049;
inline constexpr int refined_sup_grid = 8193;

/// max |g| over a uniform grid, refined by golden-section ascent around the
/// five best grid points. Grid evaluation is OpenMP-parallel.
/// Throws EvalError when g is NaN somewhere on the grid.
NormValue sup_norm(const ScalarFunction& g, Interval interval, int grid_points = default_sup_grid);

/// Serial reference for sup_norm; bit-identical result.
NormValue sup_norm_serial(const ScalarFunction& g, Interval interval, int grid_points = default_sup_grid);

/// (int_a^b |g(s)|^p psi'(s) ds)^(1/p), p >= 1.
NormValue weighted_lp_norm(const ScalarFunction& g, const PsiFunction& psi, double p, Interval interval,
                           double tol = fixture_tol);

/// Which form of the weighted-L1 bound to use: the one the derivation
/// supports (divisor Gamma(alpha+1), exponent alpha) or the displayed
/// variant (divisor Gamma(alpha+2), exponent alpha+1).
enum class L1Form { derived, printed };

/// RHS = max(norm_left, norm_right) / divisor * [(psi(s)-psi(a))^theta + (psi(b)-psi(s))^theta].
struct Coefficient {
    double divisor = 1.0;
    double theta = 1.0;
};

/// Linf: (Gamma(alpha+2), alpha+1), alpha > 0.
/// L1psi: (Gamma(alpha+1), alpha), alpha >= 1.
/// Lqpsi: (Gamma(alpha)(alpha+1/p)(p(alpha-1)+1)^(1/p), alpha+1/p), alpha > 1/q.
/// Throws RegimeError when alpha/p violate the regime hypotheses.
Coefficient theorem_coefficient(const RegimeSpec& regime, double alpha, L1Form l1_form = L1Form::derived);

/// Empty string when the regime applies to alpha, otherwise the skip reason.
std::string regime_violation(const RegimeSpec& regime, double alpha);

} // namespace psifrac
