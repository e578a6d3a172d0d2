#include "psifrac/psi.hpp"

#include "psifrac/errors.hpp"
#include "psifrac/format.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace psifrac {

std::string_view to_string(PsiKind kind) {
    switch (kind) {
    case PsiKind::identity: return "identity";
    case PsiKind::affine: return "affine";
    case PsiKind::log: return "log";
    case PsiKind::power: return "power";
    case PsiKind::exp: return "exp";
    }
    return "?";
}

PsiKind psi_kind_from_string(std::string_view name) {
    if (name == "identity") return PsiKind::identity;
    if (name == "affine") return PsiKind::affine;
    if (name == "log" || name == "ln") return PsiKind::log;
    if (name == "power") return PsiKind::power;
    if (name == "exp") return PsiKind::exp;
    throw ParamError("unknown psi kind '" + std::string(name) + "'");
}

PsiFunction make_psi(PsiKind kind, std::span<const double> params, Interval domain) {
    if (!(domain.lo < domain.hi) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi))
        throw DomainError("psi domain must be a finite interval with a < b");

    auto expect_params = [&](std::size_t count) {
        if (params.size() != count)
            throw ParamError(std::string(to_string(kind)) + " psi expects " + std::to_string(count) +
                             " parameter(s), got " + std::to_string(params.size()));
    };

    PsiFunction psi;
    psi.kind_ = kind;
    psi.domain_ = domain;
    switch (kind) {
    case PsiKind::identity:
    case PsiKind::exp:
        expect_params(0);
        break;
    case PsiKind::affine:
        expect_params(2);
        psi.c0_ = params[0];
        psi.c1_ = params[1];
        if (!(psi.c1_ > 0.0) || !std::isfinite(psi.c0_))
            throw ParamError("affine psi requires c1 > 0");
        break;
    case PsiKind::log:
        expect_params(0);
        if (!(domain.lo > 0.0)) throw DomainError("log psi requires a domain inside (0, inf)");
        break;
    case PsiKind::power:
        expect_params(1);
        psi.sigma_ = params[0];
        if (!(psi.sigma_ > 0.0) || !std::isfinite(psi.sigma_))
            throw ParamError("power psi requires sigma > 0");
        if (!(domain.lo > 0.0)) throw DomainError("power psi requires a domain inside (0, inf)");
        break;
    }
    psi.lo_value_ = psi(domain.lo);
    psi.hi_value_ = psi(domain.hi);
    if (!(psi.lo_value_ < psi.hi_value_) || !std::isfinite(psi.hi_value_))
        throw DomainError("psi is not strictly increasing in floating point on this domain");
    return psi;
}

double PsiFunction::operator()(double t) const {
    switch (kind_) {
    case PsiKind::identity: return t;
    case PsiKind::affine: return c0_ + c1_ * t;
    case PsiKind::log: return std::log(t);
    case PsiKind::power: return std::pow(t, sigma_);
    case PsiKind::exp: return std::exp(t);
    }
    return t;
}

double PsiFunction::derivative(double t) const {
    switch (kind_) {
    case PsiKind::identity: return 1.0;
    case PsiKind::affine: return c1_;
    case PsiKind::log: return 1.0 / t;
    case PsiKind::power: return sigma_ * std::pow(t, sigma_ - 1.0);
    case PsiKind::exp: return std::exp(t);
    }
    return 1.0;
}

double PsiFunction::closed_inverse(double u) const {
    switch (kind_) {
    case PsiKind::identity: return u;
    case PsiKind::affine: return (u - c0_) / c1_;
    case PsiKind::log: return std::exp(u);
    case PsiKind::power: return std::pow(u, 1.0 / sigma_);
    case PsiKind::exp: return std::log(u);
    }
    return u;
}

double PsiFunction::inverse(double u) const {
    const double slack = 1e-12 * std::max(1.0, std::max(std::abs(lo_value_), std::abs(hi_value_)));
    if (!(u >= lo_value_ - slack && u <= hi_value_ + slack))
        throw RangeError("psi inverse: " + format_shortest(u) + " is outside [" + format_shortest(lo_value_) +
                         ", " + format_shortest(hi_value_) + "]");
    if (u <= lo_value_) return domain_.lo;
    if (u >= hi_value_) return domain_.hi;

    double t = std::clamp(closed_inverse(u), domain_.lo, domain_.hi);
    if (std::abs((*this)(t) - u) <= 1e-12 * std::max(1.0, std::abs(u))) return t;

    // Bisection fallback.
    double lo = domain_.lo;
    double hi = domain_.hi;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((*this)(mid) < u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double PsiFunction::midpoint() const { return inverse(0.5 * (lo_value_ + hi_value_)); }

std::string PsiFunction::describe() const {
    std::string out(to_string(kind_));
    if (kind_ == PsiKind::affine)
        out += ":c0=" + format_shortest(c0_) + ",c1=" + format_shortest(c1_);
    else if (kind_ == PsiKind::power)
        out += ":sigma=" + format_shortest(sigma_);
    out += "@[" + format_shortest(domain_.lo) + "," + format_shortest(domain_.hi) + "]";
    return out;
}

double psi_inverse(const PsiFunction& psi, double u) { return psi.inverse(u); }

} // namespace psifrac
