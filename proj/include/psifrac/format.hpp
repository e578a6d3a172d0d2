#pragma once

// Locale-independent number formatting used by reports and the CLI.

#include <charconv>
#include <string>

namespace psifrac {

/// Shortest round-trip representation.
inline std::string format_shortest(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// 15 significant digits, general notation.
inline std::string format_sig15(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

/// Fixed notation with 15 digits after the decimal point.
inline std::string format_fixed15(double x) {
    char buf[400];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 15);
    return std::string(buf, res.ptr);
}

} // namespace psifrac
