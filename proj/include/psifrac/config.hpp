#pragma once

// Suite configuration files: a small TOML subset (sections, key = value,
// strings, numbers, booleans, arrays that may span lines).

#include "psifrac/suite.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace psifrac {

struct TomlValue {
    enum class Kind { string, number, boolean, array };
    Kind kind = Kind::string;
    std::string text;
    double number = 0.0;
    bool boolean = false;
    std::vector<TomlValue> items;
};

/// section -> key -> value. Keys before the first section live under "".
using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

/// Throws ConfigError with a line number on malformed input.
TomlTable parse_toml(std::string_view text);

struct SuiteConfig {
    SuiteSpec spec;
    std::string csv_path = "report.csv";
    std::string summary_path = "summary.txt";
};

/// Recognised layout:
///
///   [suite]
///   seed = 7
///   psi = ["identity@0,1", "log@1,e"]
///   functions = ["flat:r=2", "random:count=4"]
///   alphas = [0.5, 1.5]
///   regimes = ["Linf", "L1psi", "Lqpsi:p=2"]
///   variants = ["split:frac=0.25", "midpoint", "trapezoid"]
///
///   [tolerances]      quad, caputo, flat, sup_grid
///   [options]         l1_form = "derived"|"printed", lhs_measure = "dpsi"|"dt"
///   [output]          csv, summary
SuiteConfig parse_config(std::string_view text);
SuiteConfig load_config(const std::filesystem::path& path);

} // namespace psifrac
