#include "psifrac/config.hpp"

#include "psifrac/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace psifrac {

namespace {

class TomlReader {
public:
    explicit TomlReader(std::string_view text) : text_(text) {}

    TomlTable parse() {
        TomlTable table;
        std::string section;
        table[section];
        while (true) {
            skip_blank_lines();
            if (at_end()) break;
            if (peek() == '[') {
                ++pos_;
                const auto close = text_.find(']', pos_);
                if (close == std::string_view::npos) fail("unterminated section header");
                section = std::string(trim(text_.substr(pos_, close - pos_)));
                if (section.empty()) fail("empty section name");
                pos_ = close + 1;
                table[section];
                expect_line_end();
                continue;
            }
            const std::string key = read_key();
            skip_spaces();
            if (at_end() || peek() != '=') fail("expected '=' after key '" + key + "'");
            ++pos_;
            skip_spaces();
            TomlValue value = read_value();
            expect_line_end();
            if (!table[section].emplace(key, std::move(value)).second) fail("duplicate key '" + key + "'");
        }
        return table;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    int line() const {
        int n = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i)
            if (text_[i] == '\n') ++n;
        return n;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("line " + std::to_string(line()) + ": " + what);
    }

    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    }

    void skip_spaces() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
    }

    void skip_comment() {
        if (!at_end() && peek() == '#')
            while (!at_end() && peek() != '\n') ++pos_;
    }

    // Whitespace, comments and newlines (inside arrays, and between entries).
    void skip_blank_lines() {
        while (true) {
            skip_spaces();
            skip_comment();
            if (!at_end() && peek() == '\n') {
                ++pos_;
                continue;
            }
            break;
        }
    }

    void expect_line_end() {
        skip_spaces();
        skip_comment();
        if (!at_end() && peek() != '\n') fail("unexpected text after value");
    }

    std::string read_key() {
        const std::size_t start = pos_;
        while (!at_end()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
                ++pos_;
            else
                break;
        }
        if (pos_ == start) fail("expected a key");
        return std::string(text_.substr(start, pos_ - start));
    }

    TomlValue read_value() {
        if (at_end()) fail("missing value");
        TomlValue v;
        const char c = peek();
        if (c == '"') {
            v.kind = TomlValue::Kind::string;
            ++pos_;
            while (true) {
                if (at_end() || peek() == '\n') fail("unterminated string");
                const char ch = text_[pos_++];
                if (ch == '"') break;
                if (ch == '\\') {
                    if (at_end()) fail("unterminated string");
                    const char esc = text_[pos_++];
                    switch (esc) {
                    case '"': v.text += '"'; break;
                    case '\\': v.text += '\\'; break;
                    case 'n': v.text += '\n'; break;
                    case 't': v.text += '\t'; break;
                    default: fail(std::string("unsupported escape \\") + esc);
                    }
                } else {
                    v.text += ch;
                }
            }
            return v;
        }
        if (c == '[') {
            v.kind = TomlValue::Kind::array;
            ++pos_;
            while (true) {
                skip_blank_lines();
                if (at_end()) fail("unterminated array");
                if (peek() == ']') {
                    ++pos_;
                    break;
                }
                v.items.push_back(read_value());
                skip_blank_lines();
                if (at_end()) fail("unterminated array");
                if (peek() == ',') {
                    ++pos_;
                } else if (peek() != ']') {
                    fail("expected ',' or ']' in array");
                }
            }
            return v;
        }
        const std::size_t start = pos_;
        while (!at_end() && peek() != ',' && peek() != ']' && peek() != '\n' && peek() != '#' && peek() != ' ' &&
               peek() != '\t' && peek() != '\r')
            ++pos_;
        const std::string_view token = text_.substr(start, pos_ - start);
        if (token == "true" || token == "false") {
            v.kind = TomlValue::Kind::boolean;
            v.boolean = token == "true";
            return v;
        }
        std::string digits;
        for (char ch : token)
            if (ch != '_') digits += ch;
        std::string_view num = digits;
        if (!num.empty() && num.front() == '+') num.remove_prefix(1);
        v.kind = TomlValue::Kind::number;
        const auto res = std::from_chars(num.data(), num.data() + num.size(), v.number);
        if (num.empty() || res.ec != std::errc{} || res.ptr != num.data() + num.size())
            fail("cannot parse value '" + std::string(token) + "'");
        return v;
    }
};

const TomlValue* find(const TomlTable& table, const std::string& section, const std::string& key) {
    const auto s = table.find(section);
    if (s == table.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

std::string where(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

std::vector<std::string> string_list(const TomlTable& table, const std::string& section, const std::string& key) {
    const TomlValue* v = find(table, section, key);
    if (!v) return {};
    if (v->kind == TomlValue::Kind::string) return {v->text};
    if (v->kind != TomlValue::Kind::array) throw ConfigError(where(section, key) + " must be a list of strings");
    std::vector<std::string> out;
    for (const auto& item : v->items) {
        if (item.kind != TomlValue::Kind::string)
            throw ConfigError(where(section, key) + " must be a list of strings");
        out.push_back(item.text);
    }
    return out;
}

std::vector<double> number_list(const TomlTable& table, const std::string& section, const std::string& key) {
    const TomlValue* v = find(table, section, key);
    if (!v) return {};
    if (v->kind == TomlValue::Kind::number) return {v->number};
    if (v->kind != TomlValue::Kind::array) throw ConfigError(where(section, key) + " must be a list of numbers");
    std::vector<double> out;
    for (const auto& item : v->items) {
        if (item.kind != TomlValue::Kind::number)
            throw ConfigError(where(section, key) + " must be a list of numbers");
        out.push_back(item.number);
    }
    return out;
}

std::optional<double> number(const TomlTable& table, const std::string& section, const std::string& key) {
    const TomlValue* v = find(table, section, key);
    if (!v) return std::nullopt;
    if (v->kind != TomlValue::Kind::number) throw ConfigError(where(section, key) + " must be a number");
    return v->number;
}

std::optional<std::string> string(const TomlTable& table, const std::string& section, const std::string& key) {
    const TomlValue* v = find(table, section, key);
    if (!v) return std::nullopt;
    if (v->kind != TomlValue::Kind::string) throw ConfigError(where(section, key) + " must be a string");
    return v->text;
}

void check_known(const TomlTable& table) {
    static const std::map<std::string, std::vector<std::string>> known = {
        {"", {}},
        {"suite", {"seed", "psi", "functions", "alphas", "regimes", "variants"}},
        {"tolerances", {"quad", "caputo", "flat", "sup_grid"}},
        {"options", {"l1_form", "lhs_measure"}},
        {"output", {"csv", "summary"}},
    };
    for (const auto& [section, entries] : table) {
        const auto k = known.find(section);
        if (k == known.end()) throw ConfigError("unknown section [" + section + "]");
        for (const auto& [key, value] : entries)
            if (std::find(k->second.begin(), k->second.end(), key) == k->second.end())
                throw ConfigError("unknown key " + where(section, key));
    }
}

} // namespace

TomlTable parse_toml(std::string_view text) { return TomlReader(text).parse(); }

SuiteConfig parse_config(std::string_view text) {
    const TomlTable table = parse_toml(text);
    check_known(table);

    SuiteConfig cfg;
    SuiteSpec& spec = cfg.spec;

    if (auto seed = number(table, "suite", "seed")) {
        if (*seed < 0 || *seed != std::floor(*seed) || *seed > 9.007199254740992e15)
            throw ConfigError("[suite] seed must be a non-negative integer");
        spec.seed = static_cast<std::uint64_t>(*seed);
    }

    for (const auto& p : string_list(table, "suite", "psi")) {
        try {
            spec.psis.push_back(parse_psi(p));
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError("psi '" + p + "': " + e.what());
        }
    }
    if (spec.psis.empty()) throw ConfigError("no psi functions");

    spec.functions = string_list(table, "suite", "functions");
    if (spec.functions.empty()) throw ConfigError("no test functions");
    // Validate every function spec against every psi up front.
    for (std::size_t p = 0; p < spec.psis.size(); ++p) {
        try {
            (void)expand_functions(spec.functions, spec.psis[p], spec.seed);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError("functions on " + spec.psis[p].describe() + ": " + e.what());
        }
    }

    spec.alphas = number_list(table, "suite", "alphas");
    if (spec.alphas.empty()) throw ConfigError("no alpha values");
    for (double a : spec.alphas)
        if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("alpha values must be positive");

    for (const auto& r : string_list(table, "suite", "regimes")) {
        try {
            spec.regimes.push_back(parse_regime(r));
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError("regime '" + r + "': " + e.what());
        }
    }
    if (spec.regimes.empty()) throw ConfigError("no regimes");

    for (const auto& v : string_list(table, "suite", "variants")) spec.variants.push_back(parse_variant(v));
    if (spec.variants.empty()) throw ConfigError("no variants");

    CheckOptions& opt = spec.options;
    if (auto v = number(table, "tolerances", "quad")) opt.quad_tol = *v;
    if (auto v = number(table, "tolerances", "caputo")) opt.caputo_tol = *v;
    if (auto v = number(table, "tolerances", "flat")) opt.flat_tol = *v;
    if (!(opt.quad_tol > 0.0 && opt.caputo_tol > 0.0 && opt.flat_tol > 0.0))
        throw ConfigError("tolerances must be positive");
    if (auto v = number(table, "tolerances", "sup_grid")) {
        if (*v < 3 || *v != std::floor(*v) || *v > 1e7) throw ConfigError("[tolerances] sup_grid must be an integer >= 3");
        opt.sup_grid = static_cast<int>(*v);
    }

    if (auto v = string(table, "options", "l1_form")) {
        if (*v == "derived")
            opt.l1_form = L1Form::derived;
        else if (*v == "printed")
            opt.l1_form = L1Form::printed;
        else
            throw ConfigError("[options] l1_form must be \"derived\" or \"printed\"");
    }
    if (auto v = string(table, "options", "lhs_measure")) {
        if (*v == "dpsi")
            opt.measure = LhsMeasure::dpsi;
        else if (*v == "dt")
            opt.measure = LhsMeasure::dt;
        else
            throw ConfigError("[options] lhs_measure must be \"dpsi\" or \"dt\"");
    }

    if (auto v = string(table, "output", "csv")) cfg.csv_path = *v;
    if (auto v = string(table, "output", "summary")) cfg.summary_path = *v;
    return cfg;
}

SuiteConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace psifrac
