#include "psifrac/frac_ops.hpp"

#include "psifrac/errors.hpp"
#include "psifrac/format.hpp"
#include "psifrac/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace psifrac {

bool is_integer_order(double alpha) { return alpha == std::floor(alpha); }

int integer_order(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ParamError("fractional order must be positive (got " + format_shortest(alpha) + ")");
    if (is_integer_order(alpha)) return static_cast<int>(alpha);
    return static_cast<int>(std::floor(alpha)) + 1;
}

FracParams FracParams::make(double alpha, Side side, Interval interval) {
    if (!(interval.lo < interval.hi)) throw ParamError("FracParams requires a < b");
    return FracParams{alpha, integer_order(alpha), side, interval};
}

namespace {

void require_in_domain(const PsiFunction& psi, double t) {
    if (!psi.domain().contains(t))
        throw RangeError("evaluation point " + format_shortest(t) + " outside " + psi.describe());
}

} // namespace

double rl_integral(Side side, const ScalarFunction& f, const PsiFunction& psi, double alpha, double t, double tol) {
    if (!(alpha > 0.0)) throw ParamError("fractional integral order must be positive");
    require_in_domain(psi, t);
    const double u_t = psi(t);
    const double lo = side == Side::left ? psi.lo_value() : u_t;
    const double hi = side == Side::left ? u_t : psi.hi_value();
    if (!(lo < hi)) return 0.0;

    auto integrand = [&](double u) { return f(psi.inverse(u)); };
    const auto end = side == Side::left ? SingularEnd::hi : SingularEnd::lo;
    const double scale = gamma_fn(alpha);
    const QuadResult r = integrate_endpoint_singular(integrand, lo, hi, alpha - 1.0, end, tol * scale);
    return r.value / scale;
}

double caputo_derivative(Side side, const TestFunction& f, double alpha, double t, double tol) {
    const int n = integer_order(alpha);
    if (f.max_order() < n)
        throw OrderError("Caputo derivative of order " + format_shortest(alpha) + " needs psi-derivatives up to " +
                         std::to_string(n) + "; '" + f.tag() + "' provides " + std::to_string(f.max_order()));
    const PsiFunction& psi = f.psi();
    require_in_domain(psi, t);
    const double sign = (side == Side::right && n % 2 == 1) ? -1.0 : 1.0;

    if (is_integer_order(alpha)) return sign * f.psi_deriv(n, t);

    const double u_t = psi(t);
    const double lo = side == Side::left ? psi.lo_value() : u_t;
    const double hi = side == Side::left ? u_t : psi.hi_value();
    if (!(lo < hi)) return 0.0;

    auto integrand = [&](double u) { return f.u_deriv(n, u); };
    const auto end = side == Side::left ? SingularEnd::hi : SingularEnd::lo;
    const double scale = gamma_fn(n - alpha);
    const QuadResult r = integrate_endpoint_singular(integrand, lo, hi, n - alpha - 1.0, end, tol * scale, tol);
    return sign * r.value / scale;
}

ScalarFunction caputo_function(Side side, const TestFunction& f, double alpha, double tol) {
    return ScalarFunction{[side, f, alpha, tol](double t) { return caputo_derivative(side, f, alpha, t, tol); },
                          f.domain(), 0};
}

double taylor_partial_sum(Side side, const TestFunction& f, int n, double t) {
    if (n < 1) throw OrderError("Taylor partial sum needs n >= 1");
    if (f.max_order() < n - 1) throw OrderError("'" + f.tag() + "' lacks the psi-derivatives for this partial sum");
    const PsiFunction& psi = f.psi();
    require_in_domain(psi, t);
    const double anchor = side == Side::left ? psi.domain().lo : psi.domain().hi;
    const double dist = side == Side::left ? psi(t) - psi.lo_value() : psi.hi_value() - psi(t);
    double sum = 0.0;
    double power = 1.0;     // dist^k
    double factorial = 1.0; // k!
    for (int k = 0; k < n; ++k) {
        if (k > 0) {
            power *= dist;
            factorial *= k;
        }
        const double sign = (side == Side::right && k % 2 == 1) ? -1.0 : 1.0;
        sum += sign * f.psi_deriv(k, anchor) / factorial * power;
    }
    return sum;
}

namespace {

double taylor_point_residual(Side side, const TestFunction& f, double alpha, double t, TaylorTolerances tol) {
    const int n = integer_order(alpha);
    const ScalarFunction derivative = caputo_function(side, f, alpha, tol.inner);
    const double remainder = rl_integral(side, derivative, f.psi(), alpha, t, tol.outer);
    return std::abs(f(t) - taylor_partial_sum(side, f, n, t) - remainder);
}

} // namespace

double taylor_residual(Side side, const TestFunction& f, double alpha, std::span<const double> grid,
                       TaylorTolerances tol) {
    std::vector<double> residuals(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t i) { residuals[i] = taylor_point_residual(side, f, alpha, grid[i], tol); });
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, r);
    return worst;
}

double taylor_residual_serial(Side side, const TestFunction& f, double alpha, std::span<const double> grid,
                              TaylorTolerances tol) {
    double worst = 0.0;
    for (double t : grid) worst = std::max(worst, taylor_point_residual(side, f, alpha, t, tol));
    return worst;
}

} // namespace psifrac
