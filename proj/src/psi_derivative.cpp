#include "psifrac/psi_derivative.hpp"

#include "psifrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace psifrac {

ScalarFunction psi_derivative(const ChainForm& g, const PsiFunction& psi, int k) {
    if (k < 0) throw OrderError("negative derivative order");
    if (k > g.max_order)
        throw OrderError("psi-derivative of order " + std::to_string(k) + " requested, only " +
                         std::to_string(g.max_order) + " available");
    return ScalarFunction{[rule = g.rule, psi, k](double t) { return rule(k, psi(t)); }, psi.domain(),
                          g.max_order - k};
}

std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int k) {
    const int n = static_cast<int>(nodes.size());
    // c[j][m]: weight of node j for derivative m.
    std::vector<std::vector<double>> c(n, std::vector<double>(k + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, k);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int m = mn; m >= 1; --m)
                    c[i][m] = c1 * (m * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int m = mn; m >= 1; --m) c[j][m] = (c4 * c[j][m] - m * c[j][m - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][k];
    return w;
}

double fd_derivative(const std::function<double(double)>& F, double lo, double hi, int k, double u) {
    if (k == 0) return F(u);
    if (k < 0 || k > max_fd_order) throw OrderError("finite-difference order out of range");

    const int n_nodes = (k % 2 == 1) ? k + 2 : k + 3;
    const int half = (n_nodes - 1) / 2;
    const double span = hi - lo;
    double h = span * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (k + 4));
    h = std::min(h, span / (n_nodes - 1));

    // Node offsets in units of h; shifted to stay inside [lo, hi].
    const double to_lo = (u - lo) / h;
    const double to_hi = (hi - u) / h;
    double first = -half;
    bool centered = true;
    if (to_lo < half) {
        first = -to_lo;
        centered = false;
    } else if (to_hi < half) {
        first = to_hi - (n_nodes - 1);
        centered = false;
    }
    const int order = centered ? ((k % 2 == 1) ? 2 : 4) : n_nodes - k;

    std::vector<double> offsets(n_nodes);
    for (int j = 0; j < n_nodes; ++j) offsets[j] = first + j;
    const auto unit_weights = fornberg_weights(0.0, offsets, k);

    auto estimate = [&](double step) {
        double acc = 0.0;
        for (int j = 0; j < n_nodes; ++j) {
            const double x = std::clamp(u + offsets[j] * step, lo, hi);
            acc += unit_weights[j] * F(x);
        }
        return acc / std::pow(step, k);
    };
    const double coarse = estimate(h);
    const double fine = estimate(0.5 * h);
    const double factor = std::ldexp(1.0, order);
    return (factor * fine - coarse) / (factor - 1.0);
}

ScalarFunction psi_derivative(const ScalarFunction& f, const PsiFunction& psi, int k) {
    if (k < 0) throw OrderError("negative derivative order");
    if (k > f.smoothness)
        throw OrderError("psi-derivative of order " + std::to_string(k) + " exceeds declared smoothness " +
                         std::to_string(f.smoothness));
    if (k > max_fd_order) throw OrderError("finite-difference path supports orders up to 6");
    if (k == 0) return f;
    auto in_u = [fn = f.fn, psi](double u) { return fn(psi.inverse(u)); };
    return ScalarFunction{[in_u, psi, k](double t) {
                              return fd_derivative(in_u, psi.lo_value(), psi.hi_value(), k, psi(t));
                          },
                          psi.domain(), f.smoothness - k};
}

} // namespace psifrac
