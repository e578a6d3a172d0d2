#pragma once

// Reference computations for the tests. Deliberately share nothing with the
// library's quadrature: fixed Gauss-Legendre rules on a geometrically graded
// mesh, working directly in t.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

/// n-point Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

inline const std::pair<std::vector<double>, std::vector<double>>& gl20() {
    static const auto rule = gauss_legendre(20);
    return rule;
}

inline double gl_panel(const std::function<double(double)>& g, double lo, double hi) {
    const auto& [x, w] = gl20();
    const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * g(c + r * x[i]);
    return r * sum;
}

/// Integral over [lo, hi] with panels shrinking geometrically towards `toward`
/// (which must be lo or hi). Suited to integrands with an endpoint kink.
inline double graded(const std::function<double(double)>& g, double lo, double hi, double toward,
                     int levels = 48) {
    double sum = 0.0;
    const double len = hi - lo;
    double outer = 1.0;
    for (int j = 0; j < levels; ++j) {
        const double inner = outer * 0.5;
        if (toward == hi)
            sum += gl_panel(g, hi - outer * len, hi - inner * len);
        else
            sum += gl_panel(g, lo + inner * len, lo + outer * len);
        outer = inner;
    }
    return sum;
}

/// Graded towards both ends, split at the midpoint.
inline double graded_both(const std::function<double(double)>& g, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    return graded(g, lo, mid, lo) + graded(g, mid, hi, hi);
}

/// Plain composite Gauss-Legendre on m equal panels.
inline double composite(const std::function<double(double)>& g, double lo, double hi, int m = 16) {
    double sum = 0.0;
    const double h = (hi - lo) / m;
    for (int j = 0; j < m; ++j) sum += gl_panel(g, lo + j * h, lo + (j + 1) * h);
    return sum;
}

/// Generic weakly singular convolution
///   (1/Gamma(nu)) int psi'(s) |psi(t) - psi(s)|^{nu-1} h(s) ds
/// over [a, t] (left) or [t, b] (right), by singularity subtraction:
///   int psi'(s)|psi(t)-psi(s)|^{nu-1} (h(s) - h(t)) ds + h(t) |psi(t)-psi(end)|^nu / nu.
struct Weight {
    std::function<double(double)> psi;
    std::function<double(double)> dpsi;
};

inline double kernel_convolution(const Weight& w, const std::function<double(double)>& h, double nu, double a,
                                 double b, double t, bool left) {
    const double lo = left ? a : t;
    const double hi = left ? t : b;
    if (hi <= lo) return 0.0;
    const double ht = h(t);
    const double pt = w.psi(t);
    auto integrand = [&](double s) {
        const double d = std::abs(pt - w.psi(s));
        if (d == 0.0) return 0.0;
        return w.dpsi(s) * std::pow(d, nu - 1.0) * (h(s) - ht);
    };
    const double body = graded_both(integrand, lo, hi);
    const double end = left ? a : b;
    const double tail = ht * std::pow(std::abs(pt - w.psi(end)), nu) / nu;
    return (body + tail) / std::tgamma(nu);
}

/// Caputo-type derivative straight from its definition: kernel of order n - alpha
/// applied to the n-th psi-derivative, with sign (-1)^n on the right.
inline double caputo(const Weight& w, const std::function<double(double)>& fn_n, int n, double alpha, double a,
                     double b, double t, bool left) {
    const double v = kernel_convolution(w, fn_n, n - alpha, a, b, t, left);
    return left || n % 2 == 0 ? v : -v;
}

/// Riemann-Liouville-type integral of order alpha.
inline double rl(const Weight& w, const std::function<double(double)>& f, double alpha, double a, double b,
                 double t, bool left) {
    return kernel_convolution(w, f, alpha, a, b, t, left);
}

inline Weight identity() {
    return {[](double t) { return t; }, [](double) { return 1.0; }};
}

/// Classical (psi = identity) Caputo derivative and RL integral, written
/// against t - s directly.
inline double classical_caputo(const std::function<double(double)>& fn_n, int n, double alpha, double a, double b,
                               double t, bool left) {
    const double nu = n - alpha;
    const double lo = left ? a : t, hi = left ? t : b;
    if (hi <= lo) return 0.0;
    const double ht = fn_n(t);
    auto integrand = [&](double s) {
        const double d = std::abs(t - s);
        return d == 0.0 ? 0.0 : std::pow(d, nu - 1.0) * (fn_n(s) - ht);
    };
    const double v = (graded_both(integrand, lo, hi) + ht * std::pow(hi - lo, nu) / nu) / std::tgamma(nu);
    return left || n % 2 == 0 ? v : -v;
}

inline double classical_rl(const std::function<double(double)>& f, double alpha, double a, double b, double t,
                           bool left) {
    const double lo = left ? a : t, hi = left ? t : b;
    if (hi <= lo) return 0.0;
    const double ft = f(t);
    auto integrand = [&](double s) {
        const double d = std::abs(t - s);
        return d == 0.0 ? 0.0 : std::pow(d, alpha - 1.0) * (f(s) - ft);
    };
    return (graded_both(integrand, lo, hi) + ft * std::pow(hi - lo, alpha) / alpha) / std::tgamma(alpha);
}

/// int_0^1 u^k (1-u)^gamma du by the Beta function via log-gamma.
inline double beta_moment(int k, double gamma) {
    return std::exp(std::lgamma(k + 1.0) + std::lgamma(gamma + 1.0) - std::lgamma(k + gamma + 2.0));
}

} // namespace oracle
