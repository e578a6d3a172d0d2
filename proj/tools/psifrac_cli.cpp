// psifrac: verify inequality suites, evaluate fractional operators, sweep
// split points and orders.

#include "psifrac/config.hpp"
#include "psifrac/errors.hpp"
#include "psifrac/format.hpp"
#include "psifrac/frac_ops.hpp"
#include "psifrac/iyengar.hpp"
#include "psifrac/parallel.hpp"
#include "psifrac/report.hpp"
#include "psifrac/suite.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace psifrac;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failures = 1;
constexpr int exit_usage = 2;

void apply_thread_env() {
    const char* env = std::getenv("PSIFRAC_THREADS");
    if (!env || !*env) return;
    int threads = 0;
    const auto res = std::from_chars(env, env + std::char_traits<char>::length(env), threads);
    if (res.ec != std::errc{} || threads < 0) {
        std::cerr << "psifrac: ignoring PSIFRAC_THREADS='" << env << "'\n";
        return;
    }
    set_thread_cap(threads);
}

std::string default_interval(std::string_view psi) {
    const auto name = psi.substr(0, psi.find(':'));
    if (name == "log" || name == "ln") return "1,e";
    if (name == "power") return "1,2";
    return "0,1";
}

PsiFunction psi_from_flags(const std::string& psi, const std::string& interval) {
    if (psi.find('@') != std::string::npos) return parse_psi(psi);
    return parse_psi(psi + "@" + (interval.empty() ? default_interval(psi) : interval));
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out);
}

struct VerifyFlags {
    std::string config;
    std::string csv;
    std::string summary;
    bool printed_l1 = false;
    std::string measure;
};

int cmd_verify(const VerifyFlags& flags) {
    SuiteConfig cfg;
    try {
        cfg = load_config(flags.config);
    } catch (const Error& e) {
        std::cerr << "psifrac verify: " << e.what() << '\n';
        return exit_usage;
    }
    if (!flags.csv.empty()) cfg.csv_path = flags.csv;
    if (!flags.summary.empty()) cfg.summary_path = flags.summary;
    if (flags.measure == "dt")
        cfg.spec.options.measure = LhsMeasure::dt;
    else if (flags.measure == "dpsi")
        cfg.spec.options.measure = LhsMeasure::dpsi;

    std::vector<SuiteRow> rows;
    try {
        rows = run_suite(cfg.spec);
    } catch (const Error& e) {
        std::cerr << "psifrac verify: " << e.what() << '\n';
        return exit_usage;
    }

    std::ostringstream csv;
    write_csv(csv, rows);
    std::ostringstream summary;
    write_summary(summary, rows, SummaryOptions{flags.printed_l1});
    if (!write_file(cfg.csv_path, csv.str())) {
        std::cerr << "psifrac verify: cannot write " << cfg.csv_path << '\n';
        return exit_usage;
    }
    if (!write_file(cfg.summary_path, summary.str())) {
        std::cerr << "psifrac verify: cannot write " << cfg.summary_path << '\n';
        return exit_usage;
    }
    std::cout << summary.str();
    return count_rows(rows).fail == 0 ? exit_ok : exit_failures;
}

struct OperatorFlags {
    std::string side = "left";
    std::string psi = "identity";
    std::string interval;
    double alpha = 0.5;
    std::string fn;
    std::vector<double> points;
};

int cmd_operator(const OperatorFlags& flags) {
    try {
        const PsiFunction psi = psi_from_flags(flags.psi, flags.interval);
        const TestFunction f = parse_function(flags.fn, psi);
        const Side side = flags.side == "left" ? Side::left : Side::right;
        if (!(flags.alpha > 0.0)) throw ParamError("alpha must be positive");
        const ScalarFunction fs = f.as_scalar();
        std::cout << "t,I,D\n";
        for (double t : flags.points) {
            const double i_val = rl_integral(side, fs, psi, flags.alpha, t);
            const double d_val = caputo_derivative(side, f, flags.alpha, t);
            std::cout << format_fixed15(t) << ',' << format_fixed15(i_val) << ',' << format_fixed15(d_val) << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "psifrac operator: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_ok;
}

struct SweepFlags {
    std::string psi = "identity";
    std::string interval;
    std::string fn;
    double alpha = 0.5;
    std::string regime = "Linf";
    double p = 2.0;
    std::string var = "s";
    int grid = 101;
    double from = 0.1;
    double to = 0.9;
    double s = std::numeric_limits<double>::quiet_NaN();
};

RegimeSpec regime_from_flags(const SweepFlags& flags) {
    if (flags.regime == "Linf") return RegimeSpec::linf();
    if (flags.regime == "L1psi") return RegimeSpec::l1psi();
    if (flags.regime == "Lqpsi") return RegimeSpec::lqpsi(flags.p);
    return parse_regime(flags.regime);
}

int cmd_sweep(const SweepFlags& flags) {
    try {
        const PsiFunction psi = psi_from_flags(flags.psi, flags.interval);
        InequalityInstance inst{parse_function(flags.fn, psi), flags.alpha, regime_from_flags(flags)};
        if (flags.grid < 3) throw ParamError("grid needs at least 3 points");

        if (flags.var == "s") {
            const SweepResult r = sweep_split(inst, flags.grid);
            std::cout << "s,lhs,rhs,margin\n";
            for (const auto& pt : r.points)
                std::cout << format_sig15(pt.s) << ',' << format_sig15(pt.lhs) << ',' << format_sig15(pt.rhs) << ','
                          << format_sig15(pt.margin) << '\n';
            if (r.degenerate)
                std::cout << "# constant bracket; minimizer degenerate\n";
            else
                std::cout << "# argmin s=" << format_sig15(r.points[r.argmin].s) << " index=" << r.argmin
                          << " psi_midpoint_index=" << r.nearest_midpoint << '\n';
            return exit_ok;
        }

        const double s = std::isnan(flags.s) ? psi.midpoint() : flags.s;
        if (!psi.domain().contains(s)) throw RangeError("split point outside the interval");
        std::cout << "alpha,lhs,rhs,margin\n";
        for (int j = 0; j < flags.grid; ++j) {
            const double alpha = flags.from + (flags.to - flags.from) * j / (flags.grid - 1);
            const std::string why = regime_violation(inst.regime, alpha);
            if (!why.empty()) {
                std::cout << "# alpha=" << format_sig15(alpha) << ' ' << why << '\n';
                continue;
            }
            inst.alpha = alpha;
            const CheckReport rep = check_split(inst, s);
            std::cout << format_sig15(alpha) << ',' << format_sig15(rep.lhs) << ',' << format_sig15(rep.rhs) << ','
                      << format_sig15(rep.margin) << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "psifrac sweep: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_env();

    CLI::App app{"psi-fractional operators and Iyengar-type inequality checks"};
    app.require_subcommand(1);

    VerifyFlags vf;
    auto* verify = app.add_subcommand("verify", "Run a configured verification suite");
    verify->add_option("config", vf.config, "Suite configuration file")->required();
    verify->add_option("--csv", vf.csv, "Per-instance CSV report (overrides the config)");
    verify->add_option("--summary", vf.summary, "Summary text file (overrides the config)");
    verify->add_flag("--l1-printed-form,--as-printed-326", vf.printed_l1,
                     "Also compare the weighted-L1 bound in its displayed form");
    verify->add_option("--lhs-measure", vf.measure, "Measure of the integral of f")
        ->check(CLI::IsMember({"dpsi", "dt"}));

    OperatorFlags of;
    auto* op = app.add_subcommand("operator", "Tabulate I^{alpha,psi} f and D^{alpha,psi} f");
    op->add_option("--side", of.side)->check(CLI::IsMember({"left", "right"}));
    op->add_option("--psi", of.psi, "identity | affine:c0=..,c1=.. | log | power:sigma=.. | exp, optionally @a,b");
    op->add_option("--interval", of.interval, "a,b");
    op->add_option("--alpha", of.alpha)->required();
    op->add_option("--fn", of.fn, "Function spec, e.g. monomial:beta=1")->required();
    op->add_option("--points", of.points, "Evaluation points")->required()->delimiter(',');

    SweepFlags sf;
    auto* sweep = app.add_subcommand("sweep", "Sweep the split point or the order");
    sweep->add_option("--psi", sf.psi);
    sweep->add_option("--interval", sf.interval, "a,b");
    sweep->add_option("--fn", sf.fn, "Function spec")->required();
    sweep->add_option("--alpha", sf.alpha);
    sweep->add_option("--regime", sf.regime, "Linf | L1psi | Lqpsi");
    sweep->add_option("--p", sf.p, "Hoelder exponent for Lqpsi");
    sweep->add_option("--var", sf.var)->check(CLI::IsMember({"s", "alpha"}));
    sweep->add_option("--grid", sf.grid);
    sweep->add_option("--from", sf.from, "First alpha of an alpha sweep");
    sweep->add_option("--to", sf.to, "Last alpha of an alpha sweep");
    sweep->add_option("--s", sf.s, "Split point of an alpha sweep (default: psi-midpoint)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (*verify) return cmd_verify(vf);
    if (*op) return cmd_operator(of);
    return cmd_sweep(sf);
}
