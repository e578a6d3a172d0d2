#pragma once

// Left- and right-hand sides of the classical Iyengar inequality and of its
// psi-Caputo generalisations in the sup, weighted-L1 and weighted-Lq regimes.

#include "psifrac/frac_ops.hpp"
#include "psifrac/func_lib.hpp"
#include "psifrac/norms.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace psifrac {

/// Which instance of the bound is evaluated.
///   split           free split point s
///   midpoint        s with psi(s) at the psi-midpoint
///   sharp_midpoint  midpoint with all boundary terms vanishing (checked)
///   partition       s = t_i, psi(t_i) = psi(a) + i (psi(b) - psi(a)) / m
///   partition_flat  partition with only f(a), f(b) surviving (checked)
///   trapezoid       partition_flat with i = 1, m = 2
enum class Variant { split, midpoint, sharp_midpoint, partition, partition_flat, trapezoid };

std::string_view to_string(Variant variant);
Variant variant_from_string(std::string_view name);

/// Measure used for the integral of f on the left-hand side. `dpsi` integrates
/// f(t) psi'(t) dt, the measure in which the Taylor remainders are bounded;
/// `dt` integrates f(t) dt literally. The two coincide for psi = identity.
enum class LhsMeasure { dpsi, dt };

std::string_view to_string(LhsMeasure measure);

struct CheckOptions {
    int sup_grid = default_sup_grid;
    /// Tolerance for the integral of f and the integral norms.
    double quad_tol = harness_tol;
    /// Tolerance of each inner Caputo-derivative quadrature.
    double caputo_tol = fixture_tol;
    L1Form l1_form = L1Form::derived;
    LhsMeasure measure = LhsMeasure::dpsi;
    /// Boundary-flatness threshold for the sharp and flat variants.
    double flat_tol = 1e-9;
};

struct InequalityInstance {
    TestFunction f;
    double alpha = 1.0;
    RegimeSpec regime{};
    Variant variant = Variant::split;
    /// Split point for Variant::split.
    double s = std::numeric_limits<double>::quiet_NaN();
    /// Partition indices for the partition variants.
    int i = 1;
    int m = 2;
    CheckOptions options{};
};

/// Regime norms of the left and right Caputo derivatives of f.
struct CaputoNorms {
    double left = 0.0;
    double right = 0.0;
    int sup_grid = 0;

    double max() const { return left > right ? left : right; }
};

CaputoNorms caputo_norms(const TestFunction& f, double alpha, const RegimeSpec& regime, const CheckOptions& options);

/// Quantities shared by every variant and split point of one (f, alpha, regime).
struct Prepared {
    CaputoNorms norms;
    QuadResult integral;
};

Prepared prepare(const InequalityInstance& instance);

/// Integral of f in the instance's LHS measure.
QuadResult lhs_integral(const TestFunction& f, LhsMeasure measure, double tol);

struct Diagnostics {
    double s = 0.0;
    double norm_left = 0.0;
    double norm_right = 0.0;
    double divisor = 0.0;
    double theta = 0.0;
    double integral = 0.0;
    double integral_error = 0.0;
    /// LHS with the b-terms written as (-1)^k f^{[k]}(b) (psi(s) - psi(b))^{k+1}.
    double lhs_alternate_sign = 0.0;
    /// RHS of the weighted-L1 bound in its displayed form (L1psi only).
    std::optional<double> rhs_printed_l1;
    int sup_grid = 0;
};

struct CheckReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool passed = false;
    Diagnostics diagnostics{};
};

/// Verdict threshold: passed iff margin >= -tol_check(rhs).
double tol_check(double rhs);

/// |int_a^b g - (b-a)(g(a)+g(b))/2| <= M (b-a)^2/4 - (g(b)-g(a))^2/(4M).
/// Throws HypothesisError when sup|g'| exceeds M by more than 1e-9.
CheckReport classical_iyengar(const TestFunction& g, double M, double tol = fixture_tol);

/// |int f - sum_{k<n} [f^{[k]}(a)(psi(s)-psi(a))^{k+1} + (-1)^k f^{[k]}(b)(psi(b)-psi(s))^{k+1}]/(k+1)!|
double iyengar_lhs(const InequalityInstance& instance, double s);
double iyengar_lhs(const InequalityInstance& instance, double s, const Prepared& prepared);

/// max(norm_left, norm_right)/divisor * [(psi(s)-psi(a))^theta + (psi(b)-psi(s))^theta].
/// Throws RegimeError when the regime does not apply to alpha.
double iyengar_rhs(const InequalityInstance& instance, double s);
double iyengar_rhs(const InequalityInstance& instance, double s, const CaputoNorms& norms);

CheckReport check_split(const InequalityInstance& instance, double s, const Prepared* prepared = nullptr);

/// Split at the psi-midpoint; with `sharp`, the boundary terms are verified to
/// vanish and the LHS reduces to |int f|. Throws HypothesisError if not flat.
CheckReport check_midpoint(const InequalityInstance& instance, bool sharp = false,
                           const Prepared* prepared = nullptr);

/// Partition node t_i. With `flat`, f^{[k]}(a) = f^{[k]}(b) = 0 for
/// k = 1..n-1 is verified and the sum collapses to (Delta/m)[i f(a) + (m-i) f(b)].
/// Throws IndexError unless 0 <= i <= m, m >= 1; HypothesisError if not flat.
CheckReport check_partition(const InequalityInstance& instance, int i, int m, bool flat = false,
                            const Prepared* prepared = nullptr);

/// Dispatches on instance.variant.
CheckReport check_instance(const InequalityInstance& instance, const Prepared* prepared = nullptr);

/// Throws HypothesisError unless |f^{[k]}(a)|, |f^{[k]}(b)| <= tol for k in [k_first, k_last].
void require_boundary_flat(const TestFunction& f, int k_first, int k_last, double tol);

struct SweepPoint {
    double s = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::size_t argmin = 0;
    /// Grid index closest to psi^{-1}((psi(a)+psi(b))/2).
    std::size_t nearest_midpoint = 0;
    double theta = 0.0;
    /// theta == 1: the bracket is constant and every s is a minimiser.
    bool degenerate = false;
};

/// RHS (and LHS) on a grid uniform in psi-coordinates.
SweepResult sweep_split(const InequalityInstance& instance, int grid_size);

} // namespace psifrac
