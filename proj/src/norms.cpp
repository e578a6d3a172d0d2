#include "psifrac/norms.hpp"

#include "psifrac/errors.hpp"
#include "psifrac/format.hpp"
#include "psifrac/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace psifrac {

std::string_view to_string(Regime regime) {
    switch (regime) {
    case Regime::Linf: return "Linf";
    case Regime::L1psi: return "L1psi";
    case Regime::Lqpsi: return "Lqpsi";
    }
    return "?";
}

RegimeSpec RegimeSpec::lqpsi(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw RegimeError("Lqpsi regime needs a Hoelder exponent p > 1");
    return RegimeSpec{Regime::Lqpsi, p, p / (p - 1.0)};
}

std::string RegimeSpec::describe() const {
    if (regime != Regime::Lqpsi) return std::string(to_string(regime));
    return "Lqpsi(p=" + format_shortest(p) + ";q=" + format_shortest(q) + ")";
}

namespace {

constexpr int refine_starts = 5;
constexpr int golden_iterations = 40;

double checked_abs(const ScalarFunction& g, double t) {
    const double v = g(t);
    if (std::isnan(v)) throw EvalError("function is NaN at " + format_shortest(t));
    return std::abs(v);
}

double golden_max(const ScalarFunction& g, double lo, double hi) {
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = checked_abs(g, x1);
    double f2 = checked_abs(g, x2);
    double best = std::max(f1, f2);
    for (int it = 0; it < golden_iterations; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = checked_abs(g, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = checked_abs(g, x1);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

std::vector<double> grid_nodes(Interval interval, int n) {
    std::vector<double> t(n);
    const double h = interval.length() / (n - 1);
    for (int j = 0; j < n; ++j) t[j] = interval.lo + j * h;
    t[n - 1] = interval.hi;
    return t;
}

template <class ForEach>
NormValue sup_norm_impl(const ScalarFunction& g, Interval interval, int grid_points, ForEach&& for_each) {
    if (grid_points < 3) throw ParamError("sup_norm needs at least 3 grid points");
    if (!(interval.lo < interval.hi)) throw ParamError("sup_norm requires a < b");
    const auto nodes = grid_nodes(interval, grid_points);
    std::vector<double> values(nodes.size());
    for_each(nodes.size(), [&](std::size_t j) { values[j] = checked_abs(g, nodes[j]); });

    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t starts = std::min<std::size_t>(refine_starts, order.size());
    std::partial_sort(order.begin(), order.begin() + starts, order.end(), [&](std::size_t x, std::size_t y) {
        return values[x] != values[y] ? values[x] > values[y] : x < y;
    });

    std::vector<double> refined(starts, 0.0);
    for_each(starts, [&](std::size_t i) {
        const std::size_t j = order[i];
        const double lo = nodes[j == 0 ? 0 : j - 1];
        const double hi = nodes[std::min(j + 1, nodes.size() - 1)];
        refined[i] = golden_max(g, lo, hi);
    });

    double best = values[order[0]];
    for (double r : refined) best = std::max(best, r);
    return NormValue{Regime::Linf, 1.0, best, grid_points};
}

} // namespace

NormValue sup_norm(const ScalarFunction& g, Interval interval, int grid_points) {
    return sup_norm_impl(g, interval, grid_points,
                         [](std::size_t n, auto&& body) { parallel_for(n, body); });
}

NormValue sup_norm_serial(const ScalarFunction& g, Interval interval, int grid_points) {
    return sup_norm_impl(g, interval, grid_points, [](std::size_t n, auto&& body) {
        for (std::size_t i = 0; i < n; ++i) body(i);
    });
}

NormValue weighted_lp_norm(const ScalarFunction& g, const PsiFunction& psi, double p, Interval interval, double tol) {
    if (!(p >= 1.0)) throw ParamError("weighted_lp_norm requires p >= 1");
    auto integrand = [&](double s) {
        const double v = std::abs(g(s));
        return (p == 1.0 ? v : std::pow(v, p)) * psi.derivative(s);
    };
    const QuadResult r = integrate_adaptive(integrand, interval.lo, interval.hi, tol);
    const double value = p == 1.0 ? r.value : std::pow(std::max(0.0, r.value), 1.0 / p);
    return NormValue{p == 1.0 ? Regime::L1psi : Regime::Lqpsi, p, value, r.evaluations};
}

std::string regime_violation(const RegimeSpec& regime, double alpha) {
    if (!(alpha > 0.0)) return "skipped: alpha<=0";
    switch (regime.regime) {
    case Regime::Linf: return {};
    case Regime::L1psi: return alpha >= 1.0 ? std::string{} : std::string{"skipped: alpha<1"};
    case Regime::Lqpsi:
        if (!(regime.p > 1.0 && regime.q > 1.0) || std::abs(1.0 / regime.p + 1.0 / regime.q - 1.0) > 1e-12)
            return "skipped: invalid Hoelder pair";
        return alpha > 1.0 / regime.q ? std::string{} : std::string{"skipped: alpha<=1/q"};
    }
    return "skipped: unknown regime";
}

Coefficient theorem_coefficient(const RegimeSpec& regime, double alpha, L1Form l1_form) {
    if (auto why = regime_violation(regime, alpha); !why.empty())
        throw RegimeError(regime.describe() + " does not apply at alpha=" + format_shortest(alpha) + " (" + why + ")");
    switch (regime.regime) {
    case Regime::Linf: return {gamma_fn(alpha + 2.0), alpha + 1.0};
    case Regime::L1psi:
        if (l1_form == L1Form::printed) return {gamma_fn(alpha + 2.0), alpha + 1.0};
        return {gamma_fn(alpha + 1.0), alpha};
    case Regime::Lqpsi: {
        const double p = regime.p;
        const double divisor = gamma_fn(alpha) * (alpha + 1.0 / p) * std::pow(p * (alpha - 1.0) + 1.0, 1.0 / p);
        return {divisor, alpha + 1.0 / p};
    }
    }
    throw RegimeError("unknown regime");
}

} // namespace psifrac
