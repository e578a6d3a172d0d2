#pragma once

// The psi-derivative operator f^{[k]}_psi = ((1/psi'(t)) d/dt)^k f.

#include "psifrac/psi.hpp"

#include <functional>
#include <span>
#include <vector>

namespace psifrac {

/// g^{(k)}(u) for a function written as f = g o psi.
using DerivativeRule = std::function<double(int k, double u)>;

/// A function given through its psi-coordinate representative g with
/// exact derivatives up to `max_order`.
struct ChainForm {
    DerivativeRule rule;
    int max_order = 0;
};

/// Exact path: f^{[k]}_psi(t) = g^{(k)}(psi(t)). Throws OrderError if
/// k > max_order.
ScalarFunction psi_derivative(const ChainForm& g, const PsiFunction& psi, int k);

/// Finite-difference path for functions without closed-form structure.
/// Differentiates F(u) = f(psi^{-1}(u)) on [psi(a), psi(b)]; see
/// `fd_derivative`. Throws OrderError if k exceeds f.smoothness or the
/// supported finite-difference order.
ScalarFunction psi_derivative(const ScalarFunction& f, const PsiFunction& psi, int k);

/// Highest order supported by the finite-difference path.
inline constexpr int max_fd_order = 6;

/// k-th derivative of F at u using a (k+2 or k+3)-point stencil that stays
/// inside [lo, hi] (one-sided near the ends), followed by one Richardson
/// step h -> h/2.
double fd_derivative(const std::function<double(double)>& F, double lo, double hi, int k, double u);

/// Fornberg weights for the k-th derivative at x0 on arbitrary nodes.
std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int k);

} // namespace psifrac
