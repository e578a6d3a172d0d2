#pragma once

// Verification suites: text specs for psi / functions / regimes / variants,
// expansion into instance rows, the randomized suite, and the runner.

#include "psifrac/iyengar.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace psifrac {

/// Deterministic uniform doubles from a 64-bit Mersenne twister; the
/// mapping from raw output to [lo, hi) is fixed here rather than left to
/// the standard library distribution.
class SuiteRng {
public:
    explicit SuiteRng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi);
    int integer(int lo, int hi); // inclusive
private:
    std::mt19937_64 engine_;
};

/// "identity@0,1", "log@1,e", "power:sigma=2@1,2", "affine:c0=1,c1=2@0,1", "exp@0,1".
PsiFunction parse_psi(std::string_view spec);

/// One function spec on a given psi:
///   monomial:beta=B[,anchor=left|right]
///   polynomial:coeffs=c0 c1 ...[,anchor=left|right|mid]
///   flat:r=R[,scale=L][,shift=C]
///   sin | cos | exp        (finite-difference path)
/// `random:count=N` is expanded by expand_functions.
TestFunction parse_function(std::string_view spec, const PsiFunction& psi);

/// Expands specs (including random:count=N) into concrete functions.
std::vector<TestFunction> expand_functions(const std::vector<std::string>& specs, const PsiFunction& psi,
                                           std::uint64_t seed);

/// "Linf", "L1psi", "Lqpsi:p=2" or "Lqpsi:q=5".
RegimeSpec parse_regime(std::string_view spec);

/// One variant entry; `split` may expand into several split points.
struct VariantSpec {
    Variant variant = Variant::split;
    /// Split points as fractions of [psi(a), psi(b)].
    std::vector<double> fractions;
    int i = 1;
    int m = 2;

    std::string describe() const;
};

/// "split:frac=0.25", "split:grid=11", "midpoint", "sharp_midpoint",
/// "partition:i=1,m=3", "partition_flat:i=1,m=3", "trapezoid".
VariantSpec parse_variant(std::string_view spec);

/// Random test functions on psi: psi-polynomials (degree 1..4, coefficients
/// uniform in [-2, 2], anchored at a, b or the psi-midpoint),
/// boundary-flat functions with r in {1, 2}, and shifted/scaled flats.
std::vector<TestFunction> random_functions(const PsiFunction& psi, int count, SuiteRng& rng);

struct SuiteSpec {
    std::vector<PsiFunction> psis;
    std::vector<std::string> functions;
    std::vector<double> alphas;
    std::vector<RegimeSpec> regimes;
    std::vector<VariantSpec> variants;
    std::uint64_t seed = 1;
    CheckOptions options{};
};

/// The randomized soundness suite: every psi kind, random and flat test
/// functions, an alpha grid spanning all three regimes, every variant with an
/// 11-point split grid.
SuiteSpec random_suite_spec(std::uint64_t seed, int random_per_psi = 4);

enum class RowStatus { pass, fail, skipped };

struct SuiteRow {
    int instance_id = 0;
    std::string theorem;
    std::string part;
    std::string regime;
    std::string psi;
    std::string function;
    double alpha = 0.0;
    std::string param;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    RowStatus status = RowStatus::skipped;
    std::string reason;
    /// Set when a failure was re-evaluated with the refined sup grid.
    bool rerun = false;
    std::optional<double> rhs_printed_l1;
    double lhs_alternate_sign = 0.0;
};

std::string status_text(const SuiteRow& row);

/// Theorem family label for a regime ("sup_norm", "weighted_l1", "weighted_lq").
std::string_view theorem_label(Regime regime);

/// Evaluates every row. Groups sharing (psi, f, alpha, regime) reuse one set of
/// norms; groups run in parallel and rows are returned in spec order.
std::vector<SuiteRow> run_suite(const SuiteSpec& spec);
/// Serial reference with identical output.
std::vector<SuiteRow> run_suite_serial(const SuiteSpec& spec);

struct SuiteCounts {
    int pass = 0;
    int fail = 0;
    int skipped = 0;
};

SuiteCounts count_rows(const std::vector<SuiteRow>& rows);

} // namespace psifrac
