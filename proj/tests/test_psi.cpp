#include <doctest.h>

#include "psifrac/errors.hpp"
#include "psifrac/func_lib.hpp"
#include "psifrac/psi.hpp"
#include "psifrac/psi_derivative.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace psifrac;
using doctest::Approx;

namespace {

std::vector<PsiFunction> all_kinds() {
    return {make_psi(PsiKind::identity, {}, {0.0, 1.0}), make_psi(PsiKind::affine, {0.5, 2.0}, {-1.0, 1.0}),
            make_psi(PsiKind::log, {}, {1.0, std::numbers::e}), make_psi(PsiKind::power, {2.0}, {1.0, 2.0}),
            make_psi(PsiKind::power, {0.5}, {0.5, 3.0}), make_psi(PsiKind::exp, {}, {0.0, 1.0})};
}

} // namespace

TEST_CASE("psi values and derivatives") {
    const auto id = make_psi(PsiKind::identity, {}, {0.0, 1.0});
    CHECK(id(0.3) == 0.3);
    CHECK(id.derivative(0.3) == 1.0);
    const auto ln = make_psi(PsiKind::log, {}, {1.0, std::numbers::e});
    CHECK(ln(std::numbers::e) == Approx(1.0).epsilon(1e-15));
    CHECK(ln.derivative(std::numbers::e) == Approx(0.3678794).epsilon(1e-7));
    const auto sq = make_psi(PsiKind::power, {2.0}, {1.0, 2.0});
    CHECK(sq(1.5) == Approx(2.25));
    CHECK(sq.inverse(2.25) == Approx(1.5));
}

TEST_CASE("psi construction errors") {
    CHECK_THROWS_AS(make_psi(PsiKind::log, {}, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(make_psi(PsiKind::power, {2.0}, {-1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(make_psi(PsiKind::identity, {}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(make_psi(PsiKind::affine, {0.0, -1.0}, {0.0, 1.0}), ParamError);
    CHECK_THROWS_AS(make_psi(PsiKind::power, {0.0}, {1.0, 2.0}), ParamError);
    CHECK_THROWS_AS(make_psi(PsiKind::power, {}, {1.0, 2.0}), ParamError);
}

TEST_CASE("psi inverse") {
    CHECK(psi_inverse(make_psi(PsiKind::identity, {}, {0.0, 1.0}), 0.25) == 0.25);
    CHECK(psi_inverse(make_psi(PsiKind::log, {}, {1.0, std::numbers::e}), 0.5) ==
          Approx(1.6487213).epsilon(1e-7));
    CHECK(psi_inverse(make_psi(PsiKind::power, {2.0}, {1.0, 2.0}), 2.0) == Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(psi_inverse(make_psi(PsiKind::identity, {}, {0.0, 1.0}), 1.5), RangeError);
}

TEST_CASE("every kind is strictly increasing and inverts on a grid") {
    for (const auto& psi : all_kinds()) {
        CAPTURE(psi.describe());
        const Interval d = psi.domain();
        double prev = -INFINITY;
        for (int j = 0; j < 1000; ++j) {
            const double t = d.lo + d.length() * j / 999.0;
            const double u = psi(t);
            CHECK(u > prev);
            CHECK(psi.derivative(t) > 0.0);
            prev = u;
            CHECK(std::abs(psi.inverse(u) - t) <= 1e-12 * std::max(1.0, std::abs(t)));
            const double uu = psi.lo_value() + psi.span() * j / 999.0;
            CHECK(std::abs(psi(psi.inverse(uu)) - uu) <= 1e-12 * std::max(1.0, std::abs(uu)));
        }
    }
}

TEST_CASE("psi derivative of t^2 and of (ln t)^3") {
    const auto id = make_psi(PsiKind::identity, {}, {0.0, 1.0});
    const std::vector<double> sq = {0.0, 0.0, 1.0};
    const auto f = psi_polynomial(id, sq, 0.0);
    const auto d1 = psi_derivative(f.chain_form(), id, 1);
    CHECK(d1(0.7) == Approx(1.4));

    const auto ln = make_psi(PsiKind::log, {}, {1.0, std::numbers::e});
    const std::vector<double> cube = {0.0, 0.0, 0.0, 1.0};
    const auto g = psi_polynomial(ln, cube, 1.0);
    const auto d2 = psi_derivative(g.chain_form(), ln, 2);
    CHECK(d2(2.0) == Approx(6.0 * std::log(2.0)));
    CHECK_THROWS_AS(psi_derivative(g.chain_form(), ln, 99), OrderError);
}

TEST_CASE("chain identity against the coordinate polynomial") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (const auto& psi : all_kinds()) {
        std::vector<double> c(5);
        for (auto& x : c) x = coef(gen);
        const double center = psi.lo_value();
        const auto f = psi_polynomial(psi, c, psi.domain().lo);
        std::uniform_real_distribution<double> pick(psi.domain().lo, psi.domain().hi);
        for (int k = 0; k <= 4; ++k) {
            const auto dk = psi_derivative(f.chain_form(), psi, k);
            for (int j = 0; j < 100; ++j) {
                const double t = pick(gen);
                const double x = psi(t) - center;
                // k-th derivative of sum c_j x^j, written out directly.
                double want = 0.0;
                for (int p = k; p <= 4; ++p) {
                    double fall = 1.0;
                    for (int q = 0; q < k; ++q) fall *= p - q;
                    want += c[p] * fall * std::pow(x, p - k);
                }
                CHECK(std::abs(dk(t) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("finite-difference path") {
    const auto id = make_psi(PsiKind::identity, {}, {0.0, 1.0});
    const ScalarFunction s{[](double t) { return std::sin(t); }, id.domain()};
    CHECK(std::abs(psi_derivative(s, id, 1)(0.0) - 1.0) <= 1e-8);
    CHECK(std::abs(psi_derivative(s, id, 1)(0.5) - std::cos(0.5)) <= 1e-8);
    CHECK(std::abs(psi_derivative(s, id, 2)(0.5) + std::sin(0.5)) <= 1e-6);
    CHECK(std::abs(psi_derivative(s, id, 3)(1.0) + std::cos(1.0)) <= 1e-4);

    // In psi-coordinates: f = e^t on psi = ln has f^{[1]} = t e^t.
    const auto ln = make_psi(PsiKind::log, {}, {1.0, std::numbers::e});
    const ScalarFunction e{[](double t) { return std::exp(t); }, ln.domain()};
    CHECK(psi_derivative(e, ln, 1)(2.0) == Approx(2.0 * std::exp(2.0)).epsilon(1e-8));
    CHECK_THROWS_AS(psi_derivative(e, ln, max_fd_order + 1), OrderError);
}

TEST_CASE("fornberg weights reproduce the central second difference") {
    const std::vector<double> nodes = {-1.0, 0.0, 1.0};
    const auto w = fornberg_weights(0.0, nodes, 2);
    CHECK(w[0] == Approx(1.0));
    CHECK(w[1] == Approx(-2.0));
    CHECK(w[2] == Approx(1.0));
}
