#include "psifrac/quadrature.hpp"

#include "psifrac/errors.hpp"
#include "psifrac/format.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace psifrac {
namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    double resabs;
};

struct WorstFirst {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.lo > y.lo;
    }
};

// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1]; only the
// non-negative half is stored (index 0 is the centre, odd indices are the
// Gauss nodes).
struct Gk21Table {
    std::array<double, 11> nodes{};
    std::array<double, 11> kronrod{};
    std::array<double, 11> gauss{};

    Gk21Table() {
        using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
        using Gauss = boost::math::quadrature::gauss<double, 10>;
        for (std::size_t i = 0; i < 11; ++i) {
            nodes[i] = Kronrod::abscissa()[i];
            kronrod[i] = Kronrod::weights()[i];
            gauss[i] = (i % 2 == 1) ? Gauss::weights()[i / 2] : 0.0;
        }
    }
};

const Gk21Table& gk21() {
    static const Gk21Table table;
    return table;
}

double checked(double y, double x) {
    if (!std::isfinite(y)) throw EvalError("integrand is not finite at " + format_shortest(x));
    return y;
}

Panel evaluate_panel(const std::function<double(double)>& g, double lo, double hi) {
    const auto& t = gk21();
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, 21> fv{};
    fv[0] = checked(g(centre), centre);
    for (std::size_t i = 1; i < 11; ++i) {
        const double dx = half * t.nodes[i];
        fv[2 * i - 1] = checked(g(centre - dx), centre - dx);
        fv[2 * i] = checked(g(centre + dx), centre + dx);
    }

    double resk = fv[0] * t.kronrod[0];
    double resg = fv[0] * t.gauss[0];
    double resabs = std::abs(fv[0]) * t.kronrod[0];
    for (std::size_t i = 1; i < 11; ++i) {
        const double pair = fv[2 * i - 1] + fv[2 * i];
        resk += t.kronrod[i] * pair;
        resg += t.gauss[i] * pair;
        resabs += t.kronrod[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    }
    const double mean = 0.5 * resk;
    double resasc = t.kronrod[0] * std::abs(fv[0] - mean);
    for (std::size_t i = 1; i < 11; ++i)
        resasc += t.kronrod[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

    resk *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return Panel{lo, hi, resk, err, resabs};
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& g, double lo, double hi, double tol,
                              double rel_tol) {
    if (!(lo < hi)) throw ParamError("integrate_adaptive requires lo < hi");
    if (!(tol > 0.0)) throw ParamError("integrate_adaptive requires tol > 0");
    if (!(rel_tol >= 0.0)) throw ParamError("integrate_adaptive requires rel_tol >= 0");

    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue;
    Panel first = evaluate_panel(g, lo, hi);
    double total_err = first.error;
    double total_abs = first.resabs;
    double total_val = first.value;
    queue.push(first);
    int evaluated = 1;

    while (total_err > std::max({tol, rel_tol * std::abs(total_val), 100.0 * eps * total_abs})) {
        if (static_cast<int>(queue.size()) >= max_quad_panels)
            throw NonConvergence("adaptive quadrature reached " + std::to_string(max_quad_panels) +
                                 " panels with error estimate " + format_shortest(total_err));
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Panel cannot be split further in floating point.
            throw NonConvergence("adaptive quadrature exhausted floating-point resolution near " +
                                 format_shortest(mid));
        }
        Panel left = evaluate_panel(g, worst.lo, mid);
        Panel right = evaluate_panel(g, mid, worst.hi);
        evaluated += 2;
        total_err += left.error + right.error - worst.error;
        total_abs += left.resabs + right.resabs - worst.resabs;
        total_val += left.value + right.value - worst.value;
        queue.push(left);
        queue.push(right);
    }

    // Re-sum in position order so the result does not depend on heap layout.
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    double value = 0.0;
    double err = 0.0;
    for (const auto& p : panels) {
        value += p.value;
        err += p.error;
    }
    return QuadResult{value, err, 21 * evaluated};
}

QuadResult integrate_endpoint_singular(const std::function<double(double)>& g, double lo, double hi,
                                       double gamma, SingularEnd singular_at, double tol, double rel_tol) {
    if (!(gamma > -1.0)) throw ParamError("endpoint weight exponent must exceed -1 (got " + format_shortest(gamma) + ")");
    if (!(lo < hi)) throw ParamError("integrate_endpoint_singular requires lo < hi");

    if (gamma >= 0.0 && gamma == std::floor(gamma)) {
        auto weighted = [&](double u) {
            const double d = singular_at == SingularEnd::hi ? hi - u : u - lo;
            return std::pow(d, gamma) * g(u);
        };
        return integrate_adaptive(weighted, lo, hi, tol, rel_tol);
    }

    const double exponent = 1.0 / (gamma + 1.0);
    const double v_max = std::pow(hi - lo, gamma + 1.0);
    auto substituted = [&](double v) {
        const double d = std::pow(v, exponent);
        const double u = singular_at == SingularEnd::hi ? std::max(lo, hi - d) : std::min(hi, lo + d);
        return g(u);
    };
    QuadResult r = integrate_adaptive(substituted, 0.0, v_max, tol * (gamma + 1.0), rel_tol);
    r.value *= exponent;
    r.error_estimate *= exponent;
    return r;
}

double gamma_fn(double x) { return std::tgamma(x); }

} // namespace psifrac
