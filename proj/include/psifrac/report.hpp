#pragma once

// CSV and text-summary writers for suite results.

#include "psifrac/suite.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace psifrac {

inline constexpr std::string_view csv_header =
    "instance_id,theorem,part,regime,psi,function,alpha,param,lhs,rhs,margin,status";

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

void write_csv(std::ostream& out, const std::vector<SuiteRow>& rows);

struct SummaryOptions {
    /// Adds a side-by-side section for the weighted-L1 bound in its displayed form.
    bool compare_printed_l1 = false;
};

/// Counts per (theorem, part), totals, and the smallest relative margin.
void write_summary(std::ostream& out, const std::vector<SuiteRow>& rows, const SummaryOptions& options = {});

} // namespace psifrac
