#pragma once

// Weight functions psi, the "clock" of the fractional operators.

#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

namespace psifrac {

/// Closed interval [lo, hi] with lo < hi.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class PsiKind { identity, affine, log, power, exp };

std::string_view to_string(PsiKind kind);
PsiKind psi_kind_from_string(std::string_view name);

/// A strictly increasing C-infinity weight restricted to a closed interval.
///
/// The kinds are a closed set so that derivative and inverse are exact:
///   identity  psi(t) = t
///   affine    psi(t) = c0 + c1 t,  c1 > 0
///   log       psi(t) = ln t,       domain in (0, inf)
///   power     psi(t) = t^sigma,    sigma > 0, domain in (0, inf)
///   exp       psi(t) = e^t
/// Instances are immutable and safe to share between threads.
class PsiFunction {
public:
    PsiFunction() = default;

    PsiKind kind() const { return kind_; }
    const Interval& domain() const { return domain_; }
    /// Every provided kind is smooth; reported as a large finite order.
    int smoothness_order() const { return 64; }

    double operator()(double t) const;
    double derivative(double t) const;

    /// psi^{-1}(u); throws RangeError unless u lies in [psi(a), psi(b)]
    /// (up to 1e-12 relative slack, which is clamped).
    double inverse(double u) const;

    /// psi(a), psi(b) and their difference.
    double lo_value() const { return lo_value_; }
    double hi_value() const { return hi_value_; }
    double span() const { return hi_value_ - lo_value_; }

    /// Point s* with psi(s*) = (psi(a) + psi(b)) / 2.
    double midpoint() const;

    /// Human-readable spec string, e.g. "power:sigma=2@[1,2]".
    std::string describe() const;

    friend PsiFunction make_psi(PsiKind, std::span<const double>, Interval);

private:
    double closed_inverse(double u) const;

    PsiKind kind_ = PsiKind::identity;
    Interval domain_{};
    double c0_ = 0.0;
    double c1_ = 1.0;
    double sigma_ = 1.0;
    double lo_value_ = 0.0;
    double hi_value_ = 1.0;
};

/// Builds a psi of the given kind. `params` is empty for identity/log/exp,
/// {c0, c1} for affine and {sigma} for power.
///
/// Throws DomainError when the interval leaves the kind's natural domain or
/// is empty, ParamError when the monotonicity constraint (c1 > 0, sigma > 0)
/// fails or the parameter count is wrong.
PsiFunction make_psi(PsiKind kind, std::span<const double> params, Interval domain);

inline PsiFunction make_psi(PsiKind kind, std::initializer_list<double> params, Interval domain) {
    return make_psi(kind, std::span<const double>(params.begin(), params.size()), domain);
}

double psi_inverse(const PsiFunction& psi, double u);

/// A real function of one variable together with the interval it is defined on.
struct ScalarFunction {
    std::function<double(double)> fn;
    Interval domain{};
    /// Declared differentiability order (used by the finite-difference path).
    int smoothness = 64;

    double operator()(double t) const { return fn(t); }
};

} // namespace psifrac
