#pragma once

// Test functions with closed-form psi-derivatives (and, for psi-monomials,
// closed-form psi-Caputo derivatives).

#include "psifrac/psi.hpp"
#include "psifrac/psi_derivative.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psifrac {

enum class Side { left, right };

std::string_view to_string(Side side);

/// Closed-form D^{alpha,psi} on one side, or nullopt when not known.
using CaputoRule = std::function<std::optional<double>(Side side, double alpha, double t)>;

/// A function f = g o psi on the psi's domain with g^{(k)} known for
/// k <= max_order. Immutable; safe to share between threads.
class TestFunction {
public:
    TestFunction(PsiFunction psi, DerivativeRule g, int max_order, std::string tag,
                 CaputoRule caputo = nullptr);

    const PsiFunction& psi() const { return psi_; }
    const Interval& domain() const { return psi_.domain(); }
    int max_order() const { return max_order_; }
    const std::string& tag() const { return tag_; }

    double operator()(double t) const { return g_(0, psi_(t)); }

    /// f^{[k]}_psi(t); throws OrderError when k > max_order.
    double psi_deriv(int k, double t) const;
    /// g^{(k)}(u) in psi-coordinates; throws OrderError when k > max_order.
    double u_deriv(int k, double u) const;

    bool has_caputo_closed() const { return static_cast<bool>(caputo_); }
    std::optional<double> caputo_closed(Side side, double alpha, double t) const;

    ScalarFunction as_scalar() const;
    ChainForm chain_form() const { return ChainForm{g_, max_order_}; }

private:
    PsiFunction psi_;
    DerivativeRule g_;
    int max_order_;
    std::string tag_;
    CaputoRule caputo_;
};

/// Polynomial in a shifted variable: sum_j c_j (u - center)^j.
struct ShiftedPolynomial {
    double center = 0.0;
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double derivative(int k, double u) const;
};

/// f(t) = (psi(t) - psi(a))^beta (anchor == a) or (psi(b) - psi(t))^beta
/// (anchor == b). For beta > n - 1 the closed Caputo derivative on the
/// anchor's side is Gamma(beta+1)/Gamma(beta+1-alpha) * distance^(beta-alpha).
/// Throws ParamError if beta < 0 or the anchor is not an endpoint.
TestFunction psi_monomial(const PsiFunction& psi, double anchor, double beta);

/// f(t) = sum_k c_k (psi(t) - psi(anchor))^k.
TestFunction psi_polynomial(const PsiFunction& psi, std::span<const double> coeffs, double anchor);

/// f(t) = [(psi(t) - psi(a)) (psi(b) - psi(t))]^r, whose first r psi-derivatives
/// (orders 0..r-1) vanish at both ends. Throws ParamError if r < 1.
TestFunction boundary_flat(const PsiFunction& psi, double a, double b, int r);

/// Wraps an arbitrary smooth function; psi-derivatives come from finite
/// differences in psi-coordinates.
TestFunction from_scalar(const PsiFunction& psi, std::function<double(double)> f, std::string tag,
                         int smoothness = max_fd_order);

/// lambda * f + shift.
TestFunction affine_transform(const TestFunction& f, double lambda, double shift = 0.0);

/// g(u) -> g(psi(a) + psi(b) - u). For psi = identity this is f(a + b - t).
TestFunction reflected(const TestFunction& f);

} // namespace psifrac
