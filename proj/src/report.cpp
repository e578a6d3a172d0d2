#include "psifrac/report.hpp"

#include "psifrac/format.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace psifrac {

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& out, const std::vector<SuiteRow>& rows) {
    out << csv_header << '\n';
    for (const auto& r : rows) {
        const bool evaluated = r.status != RowStatus::skipped;
        out << r.instance_id << ',' << csv_field(r.theorem) << ',' << csv_field(r.part) << ','
            << csv_field(r.regime) << ',' << csv_field(r.psi) << ',' << csv_field(r.function) << ','
            << format_sig15(r.alpha) << ',' << csv_field(r.param) << ',';
        if (evaluated)
            out << format_sig15(r.lhs) << ',' << format_sig15(r.rhs) << ',' << format_sig15(r.margin);
        else
            out << ",,";
        out << ',' << csv_field(status_text(r)) << '\n';
    }
}

namespace {

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

} // namespace

void write_summary(std::ostream& out, const std::vector<SuiteRow>& rows, const SummaryOptions& options) {
    const SuiteCounts total = count_rows(rows);
    int reruns = 0;
    double worst = INFINITY;
    int worst_id = 0;
    std::map<std::pair<std::string, std::string>, SuiteCounts> parts;
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.theorem, r.part);
        if (!parts.count(key)) order.push_back(key);
        auto& c = parts[key];
        if (r.status == RowStatus::pass) ++c.pass;
        else if (r.status == RowStatus::fail) ++c.fail;
        else ++c.skipped;
        if (r.rerun) ++reruns;
        if (r.status != RowStatus::skipped) {
            const double rel = r.margin / std::max(1.0, r.rhs);
            if (rel < worst) {
                worst = rel;
                worst_id = r.instance_id;
            }
        }
    }

    out << "rows " << rows.size() << '\n';
    out << "pass " << total.pass << '\n';
    out << "fail " << total.fail << '\n';
    out << "skipped " << total.skipped << '\n';
    out << "reruns " << reruns << '\n';
    if (worst_id != 0)
        out << "min relative margin " << format_sig15(worst) << " (instance " << worst_id << ")\n";
    out << '\n';
    out << pad("theorem", 14) << pad("part", 17) << pad("pass", 7) << pad("fail", 7) << "skipped\n";
    for (const auto& key : order) {
        const auto& c = parts[key];
        out << pad(key.first, 14) << pad(key.second, 17) << pad(std::to_string(c.pass), 7)
            << pad(std::to_string(c.fail), 7) << c.skipped << '\n';
    }

    if (options.compare_printed_l1) {
        int compared = 0;
        int violated = 0;
        double worst_printed = INFINITY;
        for (const auto& r : rows) {
            if (!r.rhs_printed_l1 || r.status == RowStatus::skipped) continue;
            ++compared;
            const double m = *r.rhs_printed_l1 - r.lhs;
            if (m < -1e-6 * std::max(1.0, *r.rhs_printed_l1)) ++violated;
            worst_printed = std::min(worst_printed, m / std::max(1.0, *r.rhs_printed_l1));
        }
        out << '\n';
        out << "weighted_l1 displayed form (Gamma(alpha+2), exponent alpha+1)\n";
        out << "compared " << compared << '\n';
        out << "violated " << violated << '\n';
        if (compared > 0) out << "min relative margin " << format_sig15(worst_printed) << '\n';
    }
}

} // namespace psifrac
