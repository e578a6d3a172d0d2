#include "psifrac/func_lib.hpp"

#include "psifrac/errors.hpp"
#include "psifrac/format.hpp"
#include "psifrac/frac_ops.hpp"
#include "psifrac/quadrature.hpp"

#include <cmath>
#include <utility>

namespace psifrac {

std::string_view to_string(Side side) { return side == Side::left ? "left" : "right"; }

TestFunction::TestFunction(PsiFunction psi, DerivativeRule g, int max_order, std::string tag, CaputoRule caputo)
    : psi_(std::move(psi)), g_(std::move(g)), max_order_(max_order), tag_(std::move(tag)),
      caputo_(std::move(caputo)) {}

double TestFunction::u_deriv(int k, double u) const {
    if (k < 0 || k > max_order_)
        throw OrderError("function '" + tag_ + "' has psi-derivatives up to order " + std::to_string(max_order_) +
                         ", order " + std::to_string(k) + " requested");
    return g_(k, u);
}

double TestFunction::psi_deriv(int k, double t) const { return u_deriv(k, psi_(t)); }

std::optional<double> TestFunction::caputo_closed(Side side, double alpha, double t) const {
    if (!caputo_) return std::nullopt;
    return caputo_(side, alpha, t);
}

ScalarFunction TestFunction::as_scalar() const {
    return ScalarFunction{[g = g_, psi = psi_](double t) { return g(0, psi(t)); }, psi_.domain(), max_order_};
}

double ShiftedPolynomial::derivative(int k, double u) const {
    const int d = degree();
    if (k > d) return 0.0;
    const double x = u - center;
    double acc = 0.0;
    for (int j = d; j >= k; --j) {
        double falling = 1.0;
        for (int m = 0; m < k; ++m) falling *= static_cast<double>(j - m);
        acc = acc * x + coeffs[j] * falling;
    }
    return acc;
}

namespace {

// beta (beta-1) ... (beta-k+1)
double falling_factorial(double beta, int k) {
    double out = 1.0;
    for (int m = 0; m < k; ++m) out *= beta - m;
    return out;
}

bool is_nonneg_integer(double x) { return x >= 0.0 && x == std::floor(x); }

TestFunction polynomial_function(const PsiFunction& psi, ShiftedPolynomial poly, std::string tag) {
    const int degree = poly.degree();
    auto rule = [poly = std::move(poly)](int k, double u) { return poly.derivative(k, u); };
    // Polynomials are smooth of every order; degree+64 leaves room above the degree.
    return TestFunction(psi, rule, degree + 64, std::move(tag));
}

std::string coeff_list(std::span<const double> coeffs) {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) out += ' ';
        out += format_shortest(coeffs[i]);
    }
    return out;
}

} // namespace

TestFunction psi_monomial(const PsiFunction& psi, double anchor, double beta) {
    if (!(beta >= 0.0)) throw ParamError("psi_monomial requires beta >= 0");
    const auto& dom = psi.domain();
    Side anchor_side;
    if (anchor == dom.lo)
        anchor_side = Side::left;
    else if (anchor == dom.hi)
        anchor_side = Side::right;
    else
        throw ParamError("psi_monomial anchor must be an endpoint of the psi domain");

    const double A = psi.lo_value();
    const double B = psi.hi_value();
    const bool integer_beta = is_nonneg_integer(beta);

    auto rule = [=](int k, double u) {
        if (integer_beta && k > beta) return 0.0;
        const double dist = anchor_side == Side::left ? std::max(0.0, u - A) : std::max(0.0, B - u);
        const double sign = (anchor_side == Side::right && k % 2 == 1) ? -1.0 : 1.0;
        const double e = beta - k;
        const double power = e == 0.0 ? 1.0 : std::pow(dist, e);
        return sign * falling_factorial(beta, k) * power;
    };

    auto caputo = [=](Side side, double alpha, double t) -> std::optional<double> {
        if (side != anchor_side) return std::nullopt;
        const int n = integer_order(alpha);
        if (integer_beta && beta <= n - 1) return 0.0;
        if (!(beta > n - 1)) return std::nullopt;
        const double u = psi(t);
        const double dist = anchor_side == Side::left ? std::max(0.0, u - A) : std::max(0.0, B - u);
        const double e = beta - alpha;
        if (integer_beta && is_nonneg_integer(alpha) && alpha > beta) return 0.0;
        const double power = e == 0.0 ? 1.0 : std::pow(dist, e);
        return std::tgamma(beta + 1.0) / std::tgamma(beta + 1.0 - alpha) * power;
    };

    std::string tag = "monomial:beta=" + format_shortest(beta) + (anchor_side == Side::left ? "" : ",anchor=right");
    return TestFunction(psi, rule, 64, std::move(tag), caputo);
}

TestFunction psi_polynomial(const PsiFunction& psi, std::span<const double> coeffs, double anchor) {
    if (coeffs.empty()) throw ParamError("psi_polynomial needs at least one coefficient");
    ShiftedPolynomial poly{psi(anchor), std::vector<double>(coeffs.begin(), coeffs.end())};
    std::string tag = "polynomial:coeffs=" + coeff_list(coeffs);
    if (anchor != psi.domain().lo) tag += ",anchor=" + format_shortest(anchor);
    return polynomial_function(psi, std::move(poly), std::move(tag));
}

TestFunction boundary_flat(const PsiFunction& psi, double a, double b, int r) {
    if (r < 1) throw ParamError("boundary_flat requires r >= 1");
    if (!(a < b)) throw ParamError("boundary_flat requires a < b");
    const double A = psi(a);
    const double D = psi(b) - A;
    // x^r (D - x)^r = sum_j C(r, j) D^{r-j} (-1)^j x^{r+j}, x = u - A.
    std::vector<double> coeffs(2 * r + 1, 0.0);
    double binom = 1.0;
    for (int j = 0; j <= r; ++j) {
        coeffs[r + j] = binom * std::pow(D, r - j) * ((j % 2) ? -1.0 : 1.0);
        binom = binom * (r - j) / (j + 1);
    }
    return polynomial_function(psi, ShiftedPolynomial{A, std::move(coeffs)}, "flat:r=" + std::to_string(r));
}

TestFunction from_scalar(const PsiFunction& psi, std::function<double(double)> f, std::string tag, int smoothness) {
    const int order = std::min(smoothness, max_fd_order);
    auto in_u = [f, psi](double u) { return f(psi.inverse(u)); };
    const double A = psi.lo_value();
    const double B = psi.hi_value();
    auto rule = [in_u, A, B](int k, double u) {
        if (k == 0) return in_u(u);
        return fd_derivative(in_u, A, B, k, u);
    };
    return TestFunction(psi, rule, order, std::move(tag));
}

TestFunction affine_transform(const TestFunction& f, double lambda, double shift) {
    auto base = f.chain_form().rule;
    auto rule = [base, lambda, shift](int k, double u) { return lambda * base(k, u) + (k == 0 ? shift : 0.0); };
    CaputoRule caputo;
    if (f.has_caputo_closed()) {
        caputo = [f, lambda](Side side, double alpha, double t) -> std::optional<double> {
            auto v = f.caputo_closed(side, alpha, t);
            if (!v) return std::nullopt;
            return lambda * *v;
        };
    }
    std::string tag = f.tag();
    if (lambda != 1.0) tag = format_shortest(lambda) + "*(" + tag + ")";
    if (shift != 0.0) tag += "+" + format_shortest(shift);
    return TestFunction(f.psi(), rule, f.max_order(), std::move(tag), caputo);
}

TestFunction reflected(const TestFunction& f) {
    const PsiFunction& psi = f.psi();
    const double mirror = psi.lo_value() + psi.hi_value();
    auto base = f.chain_form().rule;
    auto rule = [base, mirror](int k, double u) {
        const double sign = (k % 2 == 1) ? -1.0 : 1.0;
        return sign * base(k, mirror - u);
    };
    CaputoRule caputo;
    if (f.has_caputo_closed()) {
        caputo = [f, psi, mirror](Side side, double alpha, double t) {
            const double t_mirror = psi.inverse(mirror - psi(t));
            return f.caputo_closed(side == Side::left ? Side::right : Side::left, alpha, t_mirror);
        };
    }
    return TestFunction(psi, rule, f.max_order(), "reflect(" + f.tag() + ")", caputo);
}

} // namespace psifrac
