// Serial reference vs OpenMP kernels.

#include "psifrac/frac_ops.hpp"
#include "psifrac/func_lib.hpp"
#include "psifrac/norms.hpp"
#include "psifrac/suite.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace psifrac;

namespace {

const PsiFunction log_psi = make_psi(PsiKind::log, {}, {1.0, std::numbers::e});

ScalarFunction caputo_of_flat() {
    static const TestFunction f = boundary_flat(log_psi, 1.0, std::numbers::e, 2);
    return caputo_function(Side::left, f, 0.6, fixture_tol);
}

void BM_SupNormSerial(benchmark::State& state) {
    const auto g = caputo_of_flat();
    for (auto _ : state) benchmark::DoNotOptimize(sup_norm_serial(g, log_psi.domain()).value);
}

void BM_SupNormParallel(benchmark::State& state) {
    const auto g = caputo_of_flat();
    for (auto _ : state) benchmark::DoNotOptimize(sup_norm(g, log_psi.domain()).value);
}

std::vector<double> taylor_grid() {
    std::vector<double> t;
    for (int j = 1; j <= 16; ++j) t.push_back(1.0 + (std::numbers::e - 1.0) * j / 16.0);
    t.back() = std::numbers::e;
    return t;
}

void BM_TaylorSerial(benchmark::State& state) {
    const auto f = boundary_flat(log_psi, 1.0, std::numbers::e, 2);
    const auto grid = taylor_grid();
    for (auto _ : state) benchmark::DoNotOptimize(taylor_residual_serial(Side::left, f, 1.5, grid));
}

void BM_TaylorParallel(benchmark::State& state) {
    const auto f = boundary_flat(log_psi, 1.0, std::numbers::e, 2);
    const auto grid = taylor_grid();
    for (auto _ : state) benchmark::DoNotOptimize(taylor_residual(Side::left, f, 1.5, grid));
}

SuiteSpec small_suite() {
    SuiteSpec spec = random_suite_spec(11, 2);
    spec.psis.resize(2);
    spec.alphas = {0.5, 1.5};
    return spec;
}

void BM_SuiteSerial(benchmark::State& state) {
    const auto spec = small_suite();
    for (auto _ : state) benchmark::DoNotOptimize(run_suite_serial(spec).size());
}

void BM_SuiteParallel(benchmark::State& state) {
    const auto spec = small_suite();
    for (auto _ : state) benchmark::DoNotOptimize(run_suite(spec).size());
}

} // namespace

BENCHMARK(BM_SupNormSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SupNormParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TaylorSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TaylorParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SuiteSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuiteParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
