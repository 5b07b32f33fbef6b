#pragma once

#include "sasolve/errors.hpp"
#include "sasolve/parse.hpp"
#include "sasolve/polynomial.hpp"
#include "sasolve/rational.hpp"
#include "sasolve/system.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sasolve {

/// Parsed system file: the system plus optional samples, auxiliary polynomials, transform
/// coefficients and seed.
struct SystemFile {
    SemiAlgebraicSystem system;
    std::vector<std::string> params;
    std::vector<std::string> vars;
    std::vector<std::vector<Rational>> samples;
    std::vector<Polynomial> aux;
    std::vector<Integer> transform;
    std::optional<std::uint64_t> seed;
};

namespace detail {

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline bool valid_symbol(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

inline std::vector<Rational> parse_point(const std::string& text)
{
    std::string t = text;
    for (char& c : t)
        if (c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
    std::vector<Rational> pt;
    for (const auto& tok : split_list(t)) pt.push_back(parse_rational(tok));
    return pt;
}

// Final order from the declared names, optionally permuted by `order_override`.
inline void apply_override(std::vector<std::string>& params, std::vector<std::string>& vars,
                           const std::vector<std::string>& order_override)
{
    if (order_override.empty()) return;
    std::vector<std::string> np, nv;
    for (const auto& s : order_override) {
        if (std::find(params.begin(), params.end(), s) != params.end()) {
            np.push_back(s);
        } else if (std::find(vars.begin(), vars.end(), s) != vars.end()) {
            nv.push_back(s);
        } else {
            throw InputError("--order names an undeclared symbol '" + s + "'");
        }
    }
    if (nv.size() != vars.size()) throw InputError("--order must list every variable");
    if (!np.empty() && np.size() != params.size()) throw InputError("--order must list every parameter or none");
    if (!np.empty()) params = np;
    vars = nv;
}

}  // namespace detail

/// Parse the line-based system format:
///   vars: x, y          params: s, u
///   eq: / ne: / gt: / ge: <polynomial>
///   aux: <polynomial>   transform: c2, c3, ...   seed: <integer>
///   sample: a, b        samples: followed by one point per line
/// `#` starts a comment.
inline SystemFile parse_system_file(const std::string& text, const std::vector<std::string>& order_override = {})
{
    struct Line {
        std::size_t number;
        std::string key, value;
    };
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    bool in_samples = false;
    while (std::getline(in, raw)) {
        ++number;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::string line = detail::trim(raw);
        if (line.empty()) continue;
        auto colon = line.find(':');
        std::string key = colon == std::string::npos ? "" : detail::trim(line.substr(0, colon));
        if (colon == std::string::npos || !detail::valid_symbol(key)) {
            if (in_samples) {
                lines.push_back({number, "sample", line});
                continue;
            }
            throw InputError("line " + std::to_string(number) + ": expected 'key: value'");
        }
        std::string value = detail::trim(line.substr(colon + 1));
        in_samples = key == "samples";
        if (in_samples) {
            if (!value.empty()) lines.push_back({number, "sample", value});
            continue;
        }
        lines.push_back({number, key, value});
    }

    SystemFile f;
    bool have_vars = false;
    auto where = [](const Line& l) { return "line " + std::to_string(l.number) + ": "; };
    for (const auto& l : lines) {
        if (l.key != "vars" && l.key != "params") continue;
        auto names = detail::split_list(l.value);
        for (const auto& n : names)
            if (!detail::valid_symbol(n)) throw InputError(where(l) + "invalid symbol name '" + n + "'");
        auto& dst = l.key == "vars" ? f.vars : f.params;
        dst.insert(dst.end(), names.begin(), names.end());
        if (l.key == "vars") have_vars = true;
    }
    if (!have_vars || f.vars.empty()) throw InputError("missing 'vars:' line");
    detail::apply_override(f.params, f.vars, order_override);
    std::vector<std::string> symbols = f.params;
    symbols.insert(symbols.end(), f.vars.begin(), f.vars.end());
    for (std::size_t i = 0; i < symbols.size(); ++i)
        for (std::size_t j = i + 1; j < symbols.size(); ++j)
            if (symbols[i] == symbols[j]) throw InputError("symbol '" + symbols[i] + "' declared twice");
    f.system.order = make_order(symbols, f.params.size());
    const auto& ord = f.system.order;

    auto poly = [&](const Line& l) {
        try {
            return parse_polynomial(l.value, ord);
        } catch (const ParseError& e) {
            throw InputError(where(l) + e.what() + " (column " + std::to_string(e.position() + 1) + ")");
        } catch (const InputError& e) {
            throw InputError(where(l) + e.what());
        }
    };
    for (const auto& l : lines) {
        try {
            if (l.key == "vars" || l.key == "params") continue;
            if (l.key == "eq") {
                f.system.equations.push_back(poly(l));
            } else if (l.key == "ne") {
                f.system.nonzeros.push_back(poly(l));
            } else if (l.key == "gt") {
                f.system.positives.push_back(poly(l));
            } else if (l.key == "ge") {
                f.system.nonnegatives.push_back(poly(l));
            } else if (l.key == "aux") {
                f.aux.push_back(poly(l));
            } else if (l.key == "sample") {
                auto pt = detail::parse_point(l.value);
                if (pt.size() != f.params.size())
                    throw InputError("sample has " + std::to_string(pt.size()) + " coordinates, expected " +
                                     std::to_string(f.params.size()));
                f.samples.push_back(pt);
            } else if (l.key == "transform") {
                for (const auto& tok : detail::split_list(l.value)) f.transform.push_back(Integer(tok));
            } else if (l.key == "seed") {
                f.seed = std::stoull(l.value);
            } else {
                throw InputError("unknown key '" + l.key + "'");
            }
        } catch (const InputError& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            throw InputError(where(l) + msg);
        } catch (const std::exception& e) {
            throw InputError(where(l) + "invalid value '" + l.value + "'");
        }
    }
    if (f.system.equations.empty()) throw InputError("at least one 'eq:' line is required");
    return f;
}

inline SystemFile load_system_file(const std::string& path, const std::vector<std::string>& order_override = {})
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system_file(ss.str(), order_override);
}

}  // namespace sasolve
