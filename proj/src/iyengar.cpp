#include "psifrac/iyengar.hpp"

#include "psifrac/errors.hpp"
#include "psifrac/format.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace psifrac {

std::string_view to_string(Variant variant) {
    switch (variant) {
    case Variant::split: return "split";
    case Variant::midpoint: return "midpoint";
    case Variant::sharp_midpoint: return "sharp_midpoint";
    case Variant::partition: return "partition";
    case Variant::partition_flat: return "partition_flat";
    case Variant::trapezoid: return "trapezoid";
    }
    return "?";
}

Variant variant_from_string(std::string_view name) {
    for (Variant v : {Variant::split, Variant::midpoint, Variant::sharp_midpoint, Variant::partition,
                      Variant::partition_flat, Variant::trapezoid})
        if (name == to_string(v)) return v;
    throw ParamError("unknown variant '" + std::string(name) + "'");
}

std::string_view to_string(LhsMeasure measure) { return measure == LhsMeasure::dpsi ? "dpsi" : "dt"; }

double tol_check(double rhs) { return 1e-6 * std::max(1.0, rhs); }

CaputoNorms caputo_norms(const TestFunction& f, double alpha, const RegimeSpec& regime, const CheckOptions& options) {
    const ScalarFunction left = caputo_function(Side::left, f, alpha, options.caputo_tol);
    const ScalarFunction right = caputo_function(Side::right, f, alpha, options.caputo_tol);
    const Interval dom = f.domain();
    switch (regime.regime) {
    case Regime::Linf:
        return {sup_norm(left, dom, options.sup_grid).value, sup_norm(right, dom, options.sup_grid).value,
                options.sup_grid};
    case Regime::L1psi:
        return {weighted_lp_norm(left, f.psi(), 1.0, dom, options.quad_tol).value,
                weighted_lp_norm(right, f.psi(), 1.0, dom, options.quad_tol).value, 0};
    case Regime::Lqpsi:
        return {weighted_lp_norm(left, f.psi(), regime.q, dom, options.quad_tol).value,
                weighted_lp_norm(right, f.psi(), regime.q, dom, options.quad_tol).value, 0};
    }
    throw RegimeError("unknown regime");
}

QuadResult lhs_integral(const TestFunction& f, LhsMeasure measure, double tol) {
    const PsiFunction& psi = f.psi();
    const Interval dom = f.domain();
    if (measure == LhsMeasure::dt) return integrate_adaptive([&](double t) { return f(t); }, dom.lo, dom.hi, tol);
    return integrate_adaptive([&](double t) { return f(t) * psi.derivative(t); }, dom.lo, dom.hi, tol);
}

Prepared prepare(const InequalityInstance& instance) {
    // Surface regime errors before doing any quadrature.
    theorem_coefficient(instance.regime, instance.alpha, instance.options.l1_form);
    return Prepared{caputo_norms(instance.f, instance.alpha, instance.regime, instance.options),
                    lhs_integral(instance.f, instance.options.measure, instance.options.quad_tol)};
}

void require_boundary_flat(const TestFunction& f, int k_first, int k_last, double tol) {
    const Interval dom = f.domain();
    for (int k = k_first; k <= k_last; ++k) {
        const double at_a = f.psi_deriv(k, dom.lo);
        const double at_b = f.psi_deriv(k, dom.hi);
        if (!(std::abs(at_a) <= tol) || !(std::abs(at_b) <= tol))
            throw HypothesisError("boundary flatness fails for '" + f.tag() + "' at order " + std::to_string(k) +
                                  ": f[k](a)=" + format_shortest(at_a) + ", f[k](b)=" + format_shortest(at_b));
    }
}

namespace {

// sum_{k<n} [f^{[k]}(a) x^{k+1} + b_sign(k) f^{[k]}(b) y^{k+1}] / (k+1)!
// with x = psi(s) - psi(a), y = psi(b) - psi(s).
double boundary_sum(const TestFunction& f, int n, double x, double y, bool alternate_sign) {
    const Interval dom = f.domain();
    double sum = 0.0;
    double px = 1.0;
    double py = 1.0;
    double factorial = 1.0;
    for (int k = 0; k < n; ++k) {
        px *= x;
        py *= y;
        factorial *= k + 1;
        const double b_sign = alternate_sign ? -1.0 : ((k % 2 == 1) ? -1.0 : 1.0);
        sum += (f.psi_deriv(k, dom.lo) * px + b_sign * f.psi_deriv(k, dom.hi) * py) / factorial;
    }
    return sum;
}

double bracket(double x, double y, double theta) { return std::pow(x, theta) + std::pow(y, theta); }

void require_split_point(const PsiFunction& psi, double s) {
    if (!psi.domain().contains(s)) throw RangeError("split point " + format_shortest(s) + " outside " + psi.describe());
}

const Prepared& ensure_prepared(const InequalityInstance& instance, const Prepared* given, Prepared& storage) {
    if (given) return *given;
    storage = prepare(instance);
    return storage;
}

CheckReport finish(double lhs, double rhs, Diagnostics diag) {
    CheckReport report;
    report.lhs = lhs;
    report.rhs = rhs;
    report.margin = rhs - lhs;
    report.passed = report.margin >= -tol_check(rhs);
    report.diagnostics = diag;
    return report;
}

Diagnostics base_diagnostics(const Prepared& prepared, double s,
                             const Coefficient& coeff) {
    Diagnostics d;
    d.s = s;
    d.norm_left = prepared.norms.left;
    d.norm_right = prepared.norms.right;
    d.divisor = coeff.divisor;
    d.theta = coeff.theta;
    d.integral = prepared.integral.value;
    d.integral_error = prepared.integral.error_estimate;
    d.sup_grid = prepared.norms.sup_grid;
    return d;
}

// Fills the displayed-form weighted-L1 RHS at psi-distances x, y.
void add_printed_l1(Diagnostics& d, const InequalityInstance& instance, const Prepared& prepared, double x, double y,
                    double scale) {
    if (instance.regime.regime != Regime::L1psi) return;
    const Coefficient printed = theorem_coefficient(instance.regime, instance.alpha, L1Form::printed);
    d.rhs_printed_l1 = prepared.norms.max() / printed.divisor * scale * bracket(x, y, printed.theta);
}

} // namespace

CheckReport classical_iyengar(const TestFunction& g, double M, double tol) {
    if (!(M > 0.0)) throw ParamError("classical Iyengar bound requires M > 0");
    const PsiFunction& psi = g.psi();
    const Interval dom = g.domain();
    const ScalarFunction derivative{[&](double t) { return psi.derivative(t) * g.psi_deriv(1, t); }, dom, 0};
    const double slope = sup_norm(derivative, dom).value;
    if (slope > M + 1e-9)
        throw HypothesisError("sup|g'| = " + format_shortest(slope) + " exceeds M = " + format_shortest(M));

    const QuadResult integral = integrate_adaptive([&](double t) { return g(t); }, dom.lo, dom.hi, tol);
    const double ga = g(dom.lo);
    const double gb = g(dom.hi);
    const double len = dom.length();
    const double lhs = std::abs(integral.value - 0.5 * len * (ga + gb));
    const double rhs = M * len * len / 4.0 - (gb - ga) * (gb - ga) / (4.0 * M);
    Diagnostics d;
    d.integral = integral.value;
    d.integral_error = integral.error_estimate;
    d.norm_left = d.norm_right = slope;
    d.divisor = 2.0;
    d.theta = 2.0;
    return finish(lhs, rhs, d);
}

double iyengar_lhs(const InequalityInstance& instance, double s, const Prepared& prepared) {
    const TestFunction& f = instance.f;
    require_split_point(f.psi(), s);
    const double us = f.psi()(s);
    const int n = integer_order(instance.alpha);
    return std::abs(prepared.integral.value -
                    boundary_sum(f, n, us - f.psi().lo_value(), f.psi().hi_value() - us, false));
}

double iyengar_lhs(const InequalityInstance& instance, double s) {
    Prepared p;
    p.integral = lhs_integral(instance.f, instance.options.measure, instance.options.quad_tol);
    return iyengar_lhs(instance, s, p);
}

double iyengar_rhs(const InequalityInstance& instance, double s, const CaputoNorms& norms) {
    const Coefficient coeff = theorem_coefficient(instance.regime, instance.alpha, instance.options.l1_form);
    const PsiFunction& psi = instance.f.psi();
    require_split_point(psi, s);
    const double us = psi(s);
    return norms.max() / coeff.divisor * bracket(us - psi.lo_value(), psi.hi_value() - us, coeff.theta);
}

double iyengar_rhs(const InequalityInstance& instance, double s) {
    theorem_coefficient(instance.regime, instance.alpha, instance.options.l1_form);
    return iyengar_rhs(instance, s, caputo_norms(instance.f, instance.alpha, instance.regime, instance.options));
}

CheckReport check_split(const InequalityInstance& instance, double s, const Prepared* given) {
    Prepared storage;
    const Prepared& prepared = ensure_prepared(instance, given, storage);
    const Coefficient coeff = theorem_coefficient(instance.regime, instance.alpha, instance.options.l1_form);
    const TestFunction& f = instance.f;
    require_split_point(f.psi(), s);

    const double us = f.psi()(s);
    const double x = us - f.psi().lo_value();
    const double y = f.psi().hi_value() - us;
    const int n = integer_order(instance.alpha);

    const double lhs = std::abs(prepared.integral.value - boundary_sum(f, n, x, y, false));
    const double rhs = prepared.norms.max() / coeff.divisor * bracket(x, y, coeff.theta);
    Diagnostics d = base_diagnostics(prepared, s, coeff);
    d.lhs_alternate_sign = std::abs(prepared.integral.value - boundary_sum(f, n, x, y, true));
    add_printed_l1(d, instance, prepared, x, y, 1.0);
    return finish(lhs, rhs, d);
}

CheckReport check_midpoint(const InequalityInstance& instance, bool sharp, const Prepared* given) {
    const TestFunction& f = instance.f;
    const int n = integer_order(instance.alpha);
    if (sharp) require_boundary_flat(f, 0, n - 1, instance.options.flat_tol);

    Prepared storage;
    const Prepared& prepared = ensure_prepared(instance, given, storage);
    CheckReport report = check_split(instance, f.psi().midpoint(), &prepared);
    if (sharp) {
        // All boundary terms vanish: the LHS is |int f|.
        report.lhs = std::abs(prepared.integral.value);
        report = finish(report.lhs, report.rhs, report.diagnostics);
    }
    return report;
}

CheckReport check_partition(const InequalityInstance& instance, int i, int m, bool flat, const Prepared* given) {
    if (m < 1 || i < 0 || i > m)
        throw IndexError("partition index i=" + std::to_string(i) + " outside [0, m=" + std::to_string(m) + "]");
    const TestFunction& f = instance.f;
    const int n = integer_order(instance.alpha);
    if (flat) require_boundary_flat(f, 1, n - 1, instance.options.flat_tol);

    Prepared storage;
    const Prepared& prepared = ensure_prepared(instance, given, storage);
    const Coefficient coeff = theorem_coefficient(instance.regime, instance.alpha, instance.options.l1_form);
    const PsiFunction& psi = f.psi();
    const Interval dom = f.domain();
    const double h = psi.span() / m;
    const double t_i = psi.inverse(psi.lo_value() + i * h);

    double correction = 0.0;
    double alternate = 0.0;
    if (flat) {
        correction = h * (i * f(dom.lo) + (m - i) * f(dom.hi));
        alternate = h * (i * f(dom.lo) - (m - i) * f(dom.hi));
    } else {
        double ph = 1.0;
        double pi = 1.0;
        double pmi = 1.0;
        double factorial = 1.0;
        for (int k = 0; k < n; ++k) {
            ph *= h;
            pi *= i;
            pmi *= (m - i);
            factorial *= k + 1;
            const double fa = f.psi_deriv(k, dom.lo);
            const double fb = f.psi_deriv(k, dom.hi);
            const double sign = (k % 2 == 1) ? -1.0 : 1.0;
            correction += ph * (pi * fa + sign * pmi * fb) / factorial;
            alternate += ph * (pi * fa - pmi * fb) / factorial;
        }
    }

    const double lhs = std::abs(prepared.integral.value - correction);
    const double scale = std::pow(h, coeff.theta);
    const double rhs = prepared.norms.max() / coeff.divisor * scale *
                       (std::pow(static_cast<double>(i), coeff.theta) + std::pow(static_cast<double>(m - i), coeff.theta));
    Diagnostics d = base_diagnostics(prepared, t_i, coeff);
    d.lhs_alternate_sign = std::abs(prepared.integral.value - alternate);
    if (instance.regime.regime == Regime::L1psi) {
        const Coefficient printed = theorem_coefficient(instance.regime, instance.alpha, L1Form::printed);
        d.rhs_printed_l1 = prepared.norms.max() / printed.divisor * std::pow(h, printed.theta) *
                           (std::pow(static_cast<double>(i), printed.theta) +
                            std::pow(static_cast<double>(m - i), printed.theta));
    }
    return finish(lhs, rhs, d);
}

CheckReport check_instance(const InequalityInstance& instance, const Prepared* prepared) {
    switch (instance.variant) {
    case Variant::split: return check_split(instance, instance.s, prepared);
    case Variant::midpoint: return check_midpoint(instance, false, prepared);
    case Variant::sharp_midpoint: return check_midpoint(instance, true, prepared);
    case Variant::partition: return check_partition(instance, instance.i, instance.m, false, prepared);
    case Variant::partition_flat: return check_partition(instance, instance.i, instance.m, true, prepared);
    case Variant::trapezoid: return check_partition(instance, 1, 2, true, prepared);
    }
    throw ParamError("unknown variant");
}

SweepResult sweep_split(const InequalityInstance& instance, int grid_size) {
    if (grid_size < 3) throw ParamError("sweep_split needs at least 3 grid points");
    const Prepared prepared = prepare(instance);
    const Coefficient coeff = theorem_coefficient(instance.regime, instance.alpha, instance.options.l1_form);
    const PsiFunction& psi = instance.f.psi();

    SweepResult result;
    result.theta = coeff.theta;
    result.degenerate = std::abs(coeff.theta - 1.0) <= 1e-12;
    const double s_star = psi.midpoint();
    const double step = psi.span() / (grid_size - 1);
    double best_distance = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_size; ++j) {
        double s;
        if (j == 0)
            s = psi.domain().lo;
        else if (j == grid_size - 1)
            s = psi.domain().hi;
        else
            s = psi.inverse(psi.lo_value() + j * step);
        SweepPoint point;
        point.s = s;
        point.lhs = iyengar_lhs(instance, s, prepared);
        point.rhs = iyengar_rhs(instance, s, prepared.norms);
        point.margin = point.rhs - point.lhs;
        result.points.push_back(point);
        if (point.rhs < result.points[result.argmin].rhs) result.argmin = result.points.size() - 1;
        const double distance = std::abs(s - s_star);
        if (distance < best_distance) {
            best_distance = distance;
            result.nearest_midpoint = result.points.size() - 1;
        }
    }
    return result;
}

} // namespace psifrac
