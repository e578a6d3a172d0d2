#include "psifrac/suite.hpp"

#include "psifrac/errors.hpp"
#include "psifrac/format.hpp"
#include "psifrac/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

namespace psifrac {

double SuiteRng::uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

int SuiteRng::integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_number(std::string_view text) {
    text = trim(text);
    if (text == "e") return std::numbers::e;
    if (text == "-e") return -std::numbers::e;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ConfigError("not a number: '" + std::string(text) + "'");
    return value;
}

int parse_int(std::string_view text) {
    const double v = parse_number(text);
    if (v != std::floor(v)) throw ConfigError("not an integer: '" + std::string(text) + "'");
    return static_cast<int>(v);
}

/// "family:k=v,k=v" -> family and key/value pairs.
struct Spec {
    std::string family;
    std::vector<std::pair<std::string, std::string>> params;

    std::optional<std::string_view> get(std::string_view key) const {
        for (const auto& [k, v] : params)
            if (k == key) return std::string_view(v);
        return std::nullopt;
    }

    void allow_only(std::initializer_list<std::string_view> keys) const {
        for (const auto& [k, v] : params)
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                throw ConfigError("unknown parameter '" + k + "' for '" + family + "'");
    }
};

Spec parse_spec(std::string_view text) {
    text = trim(text);
    Spec spec;
    const auto colon = text.find(':');
    spec.family = std::string(trim(text.substr(0, colon)));
    if (spec.family.empty()) throw ConfigError("empty spec");
    if (colon == std::string_view::npos) return spec;
    for (auto item : split(text.substr(colon + 1), ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected key=value in '" + std::string(text) + "'");
        spec.params.emplace_back(std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1))));
    }
    return spec;
}

} // namespace

PsiFunction parse_psi(std::string_view text) {
    const auto at = text.find('@');
    if (at == std::string_view::npos) throw ConfigError("psi spec needs '@a,b': '" + std::string(text) + "'");
    const Spec spec = parse_spec(text.substr(0, at));
    const auto bounds = split(text.substr(at + 1), ',');
    if (bounds.size() != 2) throw ConfigError("psi interval must be 'a,b': '" + std::string(text) + "'");
    const Interval interval{parse_number(bounds[0]), parse_number(bounds[1])};

    PsiKind kind;
    try {
        kind = psi_kind_from_string(spec.family);
    } catch (const ParamError& e) {
        throw ConfigError(e.what());
    }
    std::vector<double> params;
    switch (kind) {
    case PsiKind::affine:
        spec.allow_only({"c0", "c1"});
        params = {parse_number(spec.get("c0").value_or("0")), parse_number(spec.get("c1").value_or("1"))};
        break;
    case PsiKind::power:
        spec.allow_only({"sigma"});
        if (!spec.get("sigma")) throw ConfigError("power psi needs sigma");
        params = {parse_number(*spec.get("sigma"))};
        break;
    default: spec.allow_only({}); break;
    }
    return make_psi(kind, params, interval);
}

TestFunction parse_function(std::string_view text, const PsiFunction& psi) {
    const Spec spec = parse_spec(text);
    const Interval dom = psi.domain();
    if (spec.family == "monomial") {
        spec.allow_only({"beta", "anchor"});
        if (!spec.get("beta")) throw ConfigError("monomial needs beta");
        const auto anchor = spec.get("anchor").value_or("left");
        if (anchor != "left" && anchor != "right") throw ConfigError("monomial anchor must be left or right");
        return psi_monomial(psi, anchor == "left" ? dom.lo : dom.hi, parse_number(*spec.get("beta")));
    }
    if (spec.family == "polynomial") {
        spec.allow_only({"coeffs", "anchor"});
        if (!spec.get("coeffs")) throw ConfigError("polynomial needs coeffs");
        std::vector<double> coeffs;
        for (auto c : split(*spec.get("coeffs"), ' '))
            if (!c.empty()) coeffs.push_back(parse_number(c));
        if (coeffs.empty()) throw ConfigError("polynomial needs at least one coefficient");
        const auto anchor = spec.get("anchor").value_or("left");
        double t0;
        if (anchor == "left")
            t0 = dom.lo;
        else if (anchor == "right")
            t0 = dom.hi;
        else if (anchor == "mid")
            t0 = psi.midpoint();
        else
            throw ConfigError("polynomial anchor must be left, right or mid");
        return psi_polynomial(psi, coeffs, t0);
    }
    if (spec.family == "flat") {
        spec.allow_only({"r", "scale", "shift"});
        const int r = parse_int(spec.get("r").value_or("1"));
        if (r < 1) throw ConfigError("flat needs r >= 1");
        const double scale = parse_number(spec.get("scale").value_or("1"));
        const double shift = parse_number(spec.get("shift").value_or("0"));
        TestFunction f = boundary_flat(psi, dom.lo, dom.hi, r);
        if (scale == 1.0 && shift == 0.0) return f;
        return affine_transform(f, scale, shift);
    }
    if (spec.family == "sin" || spec.family == "cos" || spec.family == "exp") {
        spec.allow_only({});
        std::function<double(double)> fn;
        if (spec.family == "sin")
            fn = [](double t) { return std::sin(t); };
        else if (spec.family == "cos")
            fn = [](double t) { return std::cos(t); };
        else
            fn = [](double t) { return std::exp(t); };
        return from_scalar(psi, fn, spec.family);
    }
    throw ConfigError("unknown function family '" + spec.family + "'");
}

std::vector<TestFunction> random_functions(const PsiFunction& psi, int count, SuiteRng& rng) {
    std::vector<TestFunction> out;
    const Interval dom = psi.domain();
    for (int j = 0; j < count; ++j) {
        switch (j % 4) {
        case 0:
        case 1: {
            const int degree = rng.integer(1, 4);
            std::vector<double> coeffs(degree + 1);
            for (auto& c : coeffs) c = rng.uniform(-2.0, 2.0);
            const int where = rng.integer(0, 2);
            const double anchor = where == 0 ? dom.lo : (where == 1 ? dom.hi : psi.midpoint());
            out.push_back(psi_polynomial(psi, coeffs, anchor));
            break;
        }
        case 2: {
            const int r = rng.integer(1, 2);
            const double scale = rng.uniform(0.5, 2.0) * (rng.integer(0, 1) ? 1.0 : -1.0);
            out.push_back(affine_transform(boundary_flat(psi, dom.lo, dom.hi, r), scale));
            break;
        }
        default: {
            const double scale = rng.uniform(0.5, 2.0) * (rng.integer(0, 1) ? 1.0 : -1.0);
            const double shift = rng.uniform(-2.0, 2.0);
            out.push_back(affine_transform(boundary_flat(psi, dom.lo, dom.hi, 2), scale, shift));
            break;
        }
        }
    }
    return out;
}

std::vector<TestFunction> expand_functions(const std::vector<std::string>& specs, const PsiFunction& psi,
                                           std::uint64_t seed) {
    std::vector<TestFunction> out;
    SuiteRng rng(seed);
    for (const auto& text : specs) {
        const Spec spec = parse_spec(text);
        if (spec.family == "random") {
            spec.allow_only({"count"});
            const int count = parse_int(spec.get("count").value_or("1"));
            if (count < 1) throw ConfigError("random needs count >= 1");
            for (auto& f : random_functions(psi, count, rng)) out.push_back(std::move(f));
        } else {
            out.push_back(parse_function(text, psi));
        }
    }
    return out;
}

RegimeSpec parse_regime(std::string_view text) {
    const Spec spec = parse_spec(text);
    if (spec.family == "Linf") {
        spec.allow_only({});
        return RegimeSpec::linf();
    }
    if (spec.family == "L1psi") {
        spec.allow_only({});
        return RegimeSpec::l1psi();
    }
    if (spec.family == "Lqpsi") {
        spec.allow_only({"p", "q"});
        double p;
        if (auto pv = spec.get("p"))
            p = parse_number(*pv);
        else if (auto qv = spec.get("q")) {
            const double q = parse_number(*qv);
            if (!(q > 1.0)) throw ConfigError("Lqpsi needs q > 1");
            p = q / (q - 1.0);
        } else
            p = 2.0;
        if (!(p > 1.0)) throw ConfigError("Lqpsi needs p > 1");
        RegimeSpec r = RegimeSpec::lqpsi(p);
        if (auto qv = spec.get("q")) r.q = parse_number(*qv);
        return r;
    }
    throw ConfigError("unknown regime '" + spec.family + "'");
}

std::string VariantSpec::describe() const {
    switch (variant) {
    case Variant::partition:
    case Variant::partition_flat:
        return std::string(to_string(variant)) + ":i=" + std::to_string(i) + ",m=" + std::to_string(m);
    default: return std::string(to_string(variant));
    }
}

VariantSpec parse_variant(std::string_view text) {
    const Spec spec = parse_spec(text);
    VariantSpec v;
    try {
        v.variant = variant_from_string(spec.family);
    } catch (const ParamError& e) {
        throw ConfigError(e.what());
    }
    switch (v.variant) {
    case Variant::split:
        spec.allow_only({"frac", "grid"});
        if (auto f = spec.get("frac")) {
            const double frac = parse_number(*f);
            if (!(frac >= 0.0 && frac <= 1.0)) throw ConfigError("split frac must lie in [0, 1]");
            v.fractions = {frac};
        } else {
            const int grid = parse_int(spec.get("grid").value_or("11"));
            if (grid < 2) throw ConfigError("split grid needs at least 2 points");
            for (int j = 0; j < grid; ++j) v.fractions.push_back(static_cast<double>(j) / (grid - 1));
        }
        break;
    case Variant::partition:
    case Variant::partition_flat:
        spec.allow_only({"i", "m"});
        v.i = parse_int(spec.get("i").value_or("1"));
        v.m = parse_int(spec.get("m").value_or("2"));
        if (v.m < 1 || v.i < 0 || v.i > v.m) throw ConfigError("partition needs 0 <= i <= m, m >= 1");
        break;
    case Variant::trapezoid:
        spec.allow_only({});
        v.i = 1;
        v.m = 2;
        break;
    default: spec.allow_only({}); break;
    }
    return v;
}

SuiteSpec random_suite_spec(std::uint64_t seed, int random_per_psi) {
    SuiteSpec spec;
    for (const char* p : {"identity@0,1", "affine:c0=0.5,c1=2@-1,1", "log@1,e", "power:sigma=2@1,2",
                          "power:sigma=0.5@0.5,3", "exp@0,1"})
        spec.psis.push_back(parse_psi(p));
    spec.functions = {"random:count=" + std::to_string(random_per_psi), "flat:r=1", "flat:r=2"};
    spec.alphas = {0.3, 0.5, 0.75, 0.9, 1.0, 1.25, 1.5, 2.0};
    spec.regimes = {RegimeSpec::linf(), RegimeSpec::l1psi(), RegimeSpec::lqpsi(2.0), RegimeSpec::lqpsi(1.5),
                    RegimeSpec::lqpsi(4.0)};
    for (const char* v : {"split:grid=11", "midpoint", "sharp_midpoint", "partition:i=1,m=3",
                          "partition:i=0,m=2", "partition_flat:i=2,m=3", "trapezoid"})
        spec.variants.push_back(parse_variant(v));
    spec.seed = seed;
    return spec;
}

std::string status_text(const SuiteRow& row) {
    switch (row.status) {
    case RowStatus::pass: return "pass";
    case RowStatus::fail: return "fail";
    case RowStatus::skipped: return row.reason.empty() ? "skipped" : row.reason;
    }
    return "?";
}

std::string_view theorem_label(Regime regime) {
    switch (regime) {
    case Regime::Linf: return "sup_norm";
    case Regime::L1psi: return "weighted_l1";
    case Regime::Lqpsi: return "weighted_lq";
    }
    return "?";
}

SuiteCounts count_rows(const std::vector<SuiteRow>& rows) {
    SuiteCounts c;
    for (const auto& r : rows) {
        if (r.status == RowStatus::pass) ++c.pass;
        else if (r.status == RowStatus::fail) ++c.fail;
        else ++c.skipped;
    }
    return c;
}

namespace {

struct RowPlan {
    Variant variant;
    double s = 0.0;
    int i = 1;
    int m = 2;
    std::string param;
};

struct Group {
    const PsiFunction* psi;
    std::size_t function_index;
    double alpha;
    RegimeSpec regime;
    std::vector<RowPlan> rows;
    std::size_t first_row;
};

CheckReport evaluate_row(const InequalityInstance& base, const RowPlan& plan, const Prepared& prepared) {
    InequalityInstance inst = base;
    inst.variant = plan.variant;
    inst.s = plan.s;
    inst.i = plan.i;
    inst.m = plan.m;
    return check_instance(inst, &prepared);
}

void fill_result(SuiteRow& row, const CheckReport& report) {
    row.lhs = report.lhs;
    row.rhs = report.rhs;
    row.margin = report.margin;
    row.status = report.passed ? RowStatus::pass : RowStatus::fail;
    row.rhs_printed_l1 = report.diagnostics.rhs_printed_l1;
    row.lhs_alternate_sign = report.diagnostics.lhs_alternate_sign;
}

void evaluate_group(const Group& group, const TestFunction& f, const CheckOptions& options,
                    std::vector<SuiteRow>& rows) {
    InequalityInstance base{f, group.alpha, group.regime, Variant::split};
    base.options = options;

    const std::string violation = regime_violation(group.regime, group.alpha);
    if (!violation.empty()) {
        for (std::size_t r = 0; r < group.rows.size(); ++r) {
            rows[group.first_row + r].status = RowStatus::skipped;
            rows[group.first_row + r].reason = violation;
        }
        return;
    }

    Prepared prepared;
    try {
        prepared = prepare(base);
    } catch (const Error& e) {
        for (std::size_t r = 0; r < group.rows.size(); ++r) {
            rows[group.first_row + r].status = RowStatus::fail;
            rows[group.first_row + r].reason = std::string("error: ") + e.what();
        }
        return;
    }

    std::vector<std::size_t> failed;
    for (std::size_t r = 0; r < group.rows.size(); ++r) {
        SuiteRow& row = rows[group.first_row + r];
        try {
            fill_result(row, evaluate_row(base, group.rows[r], prepared));
            if (row.status == RowStatus::fail) failed.push_back(r);
        } catch (const HypothesisError& e) {
            row.status = RowStatus::skipped;
            row.reason = "skipped: not boundary-flat";
        } catch (const Error& e) {
            row.status = RowStatus::fail;
            row.reason = std::string("error: ") + e.what();
        }
    }
    if (failed.empty()) return;

    // One re-run with a finer sup grid and tighter quadrature before reporting.
    InequalityInstance refined = base;
    refined.options.sup_grid = refined_sup_grid;
    refined.options.quad_tol = options.quad_tol * 1e-2;
    refined.options.caputo_tol = options.caputo_tol * 1e-2;
    const Prepared finer = prepare(refined);
    for (std::size_t r : failed) {
        SuiteRow& row = rows[group.first_row + r];
        fill_result(row, evaluate_row(refined, group.rows[r], finer));
        row.rerun = true;
    }
}

std::vector<RowPlan> plan_rows(const PsiFunction& psi, const VariantSpec& v) {
    std::vector<RowPlan> out;
    switch (v.variant) {
    case Variant::split:
        for (double frac : v.fractions) {
            double s;
            if (frac <= 0.0)
                s = psi.domain().lo;
            else if (frac >= 1.0)
                s = psi.domain().hi;
            else
                s = psi.inverse(psi.lo_value() + frac * psi.span());
            out.push_back({Variant::split, s, 1, 2, "s=" + format_sig15(s)});
        }
        break;
    case Variant::midpoint:
    case Variant::sharp_midpoint:
        out.push_back({v.variant, psi.midpoint(), 1, 2, "s=" + format_sig15(psi.midpoint())});
        break;
    case Variant::partition:
    case Variant::partition_flat:
    case Variant::trapezoid:
        out.push_back({v.variant, 0.0, v.i, v.m, "i=" + std::to_string(v.i) + ";m=" + std::to_string(v.m)});
        break;
    }
    return out;
}

template <class ForEach>
std::vector<SuiteRow> run_suite_impl(const SuiteSpec& spec, ForEach&& for_each) {
    // Functions per psi, expanded deterministically from the seed.
    std::vector<std::vector<TestFunction>> functions;
    functions.reserve(spec.psis.size());
    for (std::size_t p = 0; p < spec.psis.size(); ++p)
        functions.push_back(expand_functions(spec.functions, spec.psis[p], spec.seed + 7919 * p));

    std::vector<Group> groups;
    std::vector<SuiteRow> rows;
    for (std::size_t p = 0; p < spec.psis.size(); ++p) {
        const PsiFunction& psi = spec.psis[p];
        for (std::size_t fi = 0; fi < functions[p].size(); ++fi) {
            for (double alpha : spec.alphas) {
                for (const auto& regime : spec.regimes) {
                    Group g{&psi, fi, alpha, regime, {}, rows.size()};
                    for (const auto& v : spec.variants)
                        for (auto& plan : plan_rows(psi, v)) g.rows.push_back(std::move(plan));
                    for (const auto& plan : g.rows) {
                        SuiteRow row;
                        row.instance_id = static_cast<int>(rows.size()) + 1;
                        row.theorem = std::string(theorem_label(regime.regime));
                        row.part = std::string(to_string(plan.variant));
                        row.regime = regime.describe();
                        row.psi = psi.describe();
                        row.function = functions[p][fi].tag();
                        row.alpha = alpha;
                        row.param = plan.param;
                        rows.push_back(std::move(row));
                    }
                    groups.push_back(std::move(g));
                }
            }
        }
    }

    // Map each group back to its psi index.
    for_each(groups.size(), [&](std::size_t gi) {
        const Group& g = groups[gi];
        const std::size_t p = static_cast<std::size_t>(g.psi - spec.psis.data());
        evaluate_group(g, functions[p][g.function_index], spec.options, rows);
    });
    return rows;
}

} // namespace

std::vector<SuiteRow> run_suite(const SuiteSpec& spec) {
    return run_suite_impl(spec, [](std::size_t n, auto&& body) { parallel_for(n, body); });
}

std::vector<SuiteRow> run_suite_serial(const SuiteSpec& spec) {
    return run_suite_impl(spec, [](std::size_t n, auto&& body) {
        for (std::size_t i = 0; i < n; ++i) body(i);
    });
}

} // namespace psifrac
