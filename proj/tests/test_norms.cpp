#include <doctest.h>

#include "psifrac/errors.hpp"
#include "psifrac/frac_ops.hpp"
#include "psifrac/func_lib.hpp"
#include "psifrac/norms.hpp"
#include "psifrac/quadrature.hpp"
#include "psifrac/suite.hpp"

#include <cmath>
#include <numbers>

using namespace psifrac;
using doctest::Approx;

TEST_CASE("sup norm examples") {
    CHECK(sup_norm({[](double t) { return 2.0 * t; }, {0.0, 1.0}}, {0.0, 1.0}).value == 2.0);
    CHECK(sup_norm({[](double) { return -3.0; }, {1.0, 2.0}}, {1.0, 2.0}).value == 3.0);

    const ScalarFunction g{[](double t) { return 1.1283792 * std::sqrt(t) - 1.5045056 * std::pow(t, 1.5); }, {0.0, 1.0}};
    const double v = sup_norm(g, {0.0, 1.0}).value;
    CHECK(v == Approx(0.3761264).epsilon(1e-7));
    double brute = 0.0;
    for (int j = 0; j <= 1000000; ++j) brute = std::max(brute, std::abs(g(j / 1e6)));
    CHECK(v >= brute - 1e-15);
    CHECK_THROWS_AS(sup_norm({[](double) { return NAN; }, {0.0, 1.0}}, {0.0, 1.0}), EvalError);
}

TEST_CASE("sup norm is sign invariant and matches its serial reference") {
    const ScalarFunction g{[](double t) { return std::sin(9.0 * t) * std::exp(-t); }, {0.0, 2.0}};
    const ScalarFunction neg{[&](double t) { return -g(t); }, {0.0, 2.0}};
    const double a = sup_norm(g, {0.0, 2.0}).value;
    CHECK(sup_norm(neg, {0.0, 2.0}).value == a);
    CHECK(sup_norm_serial(g, {0.0, 2.0}).value == a);
    CHECK(sup_norm_serial(g, {0.0, 2.0}, refined_sup_grid).value == sup_norm(g, {0.0, 2.0}, refined_sup_grid).value);
}

TEST_CASE("weighted norms") {
    const auto id = make_psi(PsiKind::identity, {}, {0.0, 1.0});
    const ScalarFunction two_t{[](double t) { return 2.0 * t; }, id.domain()};
    CHECK(weighted_lp_norm(two_t, id, 1.0, id.domain(), 1e-12).value == Approx(1.0));
    CHECK(weighted_lp_norm(two_t, id, 2.0, id.domain(), 1e-12).value == Approx(1.1547005).epsilon(1e-7));
    const auto ln = make_psi(PsiKind::log, {}, {1.0, std::numbers::e});
    CHECK(weighted_lp_norm({[](double) { return 1.0; }, ln.domain()}, ln, 1.0, ln.domain(), 1e-12).value ==
          Approx(1.0));
}

TEST_CASE("Hoelder consistency over random functions") {
    const SuiteSpec spec = random_suite_spec(3);
    for (const auto& psi : spec.psis) {
        for (const auto& f : expand_functions(spec.functions, psi, 3)) {
            const ScalarFunction d = caputo_function(Side::left, f, 0.6, 1e-9);
            for (double p : {1.5, 2.0, 4.0}) {
                const double q = p / (p - 1.0);
                const double l1 = weighted_lp_norm(d, psi, 1.0, psi.domain(), 1e-9).value;
                const double lq = weighted_lp_norm(d, psi, q, psi.domain(), 1e-9).value;
                CHECK(l1 <= lq * std::pow(psi.span(), 1.0 / p) + 1e-8);
            }
        }
    }
}

TEST_CASE("theorem coefficients") {
    auto c = theorem_coefficient(RegimeSpec::linf(), 1.0);
    CHECK(c.divisor == Approx(2.0));
    CHECK(c.theta == 2.0);
    c = theorem_coefficient(RegimeSpec::l1psi(), 1.0);
    CHECK(c.divisor == Approx(1.0));
    CHECK(c.theta == 1.0);
    c = theorem_coefficient(RegimeSpec::l1psi(), 1.0, L1Form::printed);
    CHECK(c.divisor == Approx(2.0));
    CHECK(c.theta == 2.0);
    c = theorem_coefficient(RegimeSpec::lqpsi(2.0), 1.0);
    CHECK(c.divisor == Approx(1.5));
    CHECK(c.theta == 1.5);

    CHECK_THROWS_AS(theorem_coefficient(RegimeSpec::l1psi(), 0.5), RegimeError);
    CHECK_THROWS_AS(theorem_coefficient(RegimeSpec::lqpsi(2.0), 0.5), RegimeError);
    CHECK_THROWS_AS(RegimeSpec::lqpsi(1.0), RegimeError);
}

TEST_CASE("regime preconditions") {
    CHECK(regime_violation(RegimeSpec::linf(), 0.1).empty());
    CHECK(regime_violation(RegimeSpec::l1psi(), 0.9) == "skipped: alpha<1");
    CHECK(regime_violation(RegimeSpec::l1psi(), 1.0).empty());
    const RegimeSpec q5 = RegimeSpec::lqpsi(1.25); // q = 5
    CHECK(q5.q == Approx(5.0));
    CHECK(regime_violation(q5, 0.4).empty());
    CHECK(regime_violation(q5, 0.1) == "skipped: alpha<=1/q");
}

TEST_CASE("midpoint bracket reproduces the classical first term") {
    // Linf at alpha = 1: M/Gamma(3) * 2 (L/2)^2 = M L^2 / 4.
    const auto c = theorem_coefficient(RegimeSpec::linf(), 1.0);
    for (double len : {1.0, 2.5}) {
        const double bracket = 2.0 * std::pow(len / 2.0, c.theta);
        CHECK(std::abs(3.0 / c.divisor * bracket - 3.0 * len * len / 4.0) <= 1e-12);
    }
}
