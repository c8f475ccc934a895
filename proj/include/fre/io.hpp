#pragma once

// Output plumbing and input grammars shared by the command-line tool.
//
//   - numbers serialize as shortest round-trip decimals (std::to_chars),
//     with -0 normalized to 0, so identical runs emit identical bytes;
//   - tables emit as CSV (header + rows) or as one-line JSON
//     {"columns":[...],"rows":[...]};
//   - function specs use the mini-grammar  name[:key=val,...]  with names
//     one | mangoldt | sigma | prod-minus | prod-plus | block | file | coeffs
//     and keys D, s, c1, c2, H, path, v (v is a ';'-separated list);
//   - complex literals are  re  or  re/im  (e.g. 1.5/-2);
//   - ranges are  a..b  (inclusive), a comma list, or a single integer;
//   - custom-function files are JSON documents {"name": str, "transform":
//     [entries]} or {"name": str, "values": [entries]}, entries scalar or
//     [re, im] pairs.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fre/core_arith.hpp"
#include "fre/expansion.hpp"
#include "fre/numeric.hpp"

namespace fre {

// --- number formatting -------------------------------------------------------

inline std::string format_number(double v) {
    if (v == 0.0) return "0"; // covers -0 as well
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, res.ptr);
}

// --- output tables -----------------------------------------------------------

struct Cell {
    std::string text;
    bool numeric;
};

inline Cell cell(double v) { return Cell{format_number(v), true}; }
inline Cell cell(std::uint64_t v) { return Cell{std::to_string(v), true}; }
inline Cell cell(std::int64_t v) { return Cell{std::to_string(v), true}; }
inline Cell cell(int v) { return Cell{std::to_string(v), true}; }
inline Cell cell(std::string s) { return Cell{std::move(s), false}; }
inline Cell cell(const char* s) { return Cell{s, false}; }

struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

inline void write_csv(std::ostream& os, const OutputTable& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].text;
        os << '\n';
    }
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline void write_json(std::ostream& os, const OutputTable& table) {
    os << "{\"columns\":[";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << '"' << json_escape(table.columns[i]) << '"';
    os << "],\"rows\":[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        os << (r ? "," : "") << '[';
        const auto& row = table.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "");
            if (row[i].numeric)
                os << row[i].text;
            else
                os << '"' << json_escape(row[i].text) << '"';
        }
        os << ']';
    }
    os << "]}\n";
}

inline void write_table(std::ostream& os, const OutputTable& table, bool as_json) {
    if (as_json)
        write_json(os, table);
    else
        write_csv(os, table);
}

// --- input parsing ------------------------------------------------------------

inline double parse_double(const std::string& s) {
    double v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

inline std::int64_t parse_int(const std::string& s) {
    std::int64_t v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

inline std::uint64_t parse_uint(const std::string& s) {
    std::uint64_t v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not a nonnegative integer: '" + s + "'");
    return v;
}

// re  or  re/im
inline cplx parse_complex(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return cplx{parse_double(s), 0.0};
    return cplx{parse_double(s.substr(0, slash)), parse_double(s.substr(slash + 1))};
}

// a..b | a,b,c | a  -- always expanded to an explicit list
inline std::vector<std::int64_t> parse_range(const std::string& s) {
    constexpr std::uint64_t kMaxRange = 10000000;
    auto dots = s.find("..");
    if (dots != std::string::npos) {
        std::int64_t a = parse_int(s.substr(0, dots));
        std::int64_t b = parse_int(s.substr(dots + 2));
        if (b < a) throw std::invalid_argument("descending range: '" + s + "'");
        if (static_cast<std::uint64_t>(b - a) >= kMaxRange)
            throw std::invalid_argument("range too wide: '" + s + "'");
        std::vector<std::int64_t> out;
        out.reserve(static_cast<std::size_t>(b - a + 1));
        for (std::int64_t v = a; v <= b; ++v) out.push_back(v);
        return out;
    }
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string piece = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(parse_int(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// --- function specs ------------------------------------------------------------

struct FunctionSpec {
    std::string name;
    std::vector<std::pair<std::string, std::string>> kv;

    bool has(const std::string& key) const {
        for (const auto& [k, v] : kv)
            if (k == key) return true;
        return false;
    }
    std::string get(const std::string& key) const {
        for (const auto& [k, v] : kv)
            if (k == key) return v;
        throw std::invalid_argument("function spec '" + name + "' needs key '" + key + "'");
    }
    std::string get_or(const std::string& key, const std::string& fallback) const {
        return has(key) ? get(key) : fallback;
    }
};

inline FunctionSpec parse_function_spec(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty function spec");
    FunctionSpec fs;
    auto colon = s.find(':');
    fs.name = s.substr(0, colon);
    if (colon == std::string::npos) return fs;
    std::string rest = s.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        std::string piece =
            rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto eq = piece.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("bad key=value in function spec: '" + piece + "'");
        fs.kv.emplace_back(piece.substr(0, eq), piece.substr(eq + 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return fs;
}

inline std::vector<cplx> parse_complex_list(const std::string& s) {
    std::vector<cplx> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto semi = s.find(';', pos);
        out.push_back(
            parse_complex(s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos)));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return out;
}

struct ResolvedFunction {
    ArithmeticFunction fn;
    std::uint64_t natural_truncation; // 0 when a truncation must be supplied
};

inline ResolvedFunction load_custom_function(const std::string& path, const SieveTables& t) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open function file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("bad JSON in " + path + ": " + e.what());
    }
    std::string name = j.value("name", std::string{"custom"});
    auto to_list = [&](const nlohmann::json& arr) {
        if (!arr.is_array() || arr.empty())
            throw std::invalid_argument("function file " + path + ": expected a nonempty array");
        std::vector<cplx> v;
        v.reserve(arr.size());
        for (const auto& e : arr) {
            if (e.is_array()) {
                if (e.size() != 2)
                    throw std::invalid_argument("function file " + path + ": pairs must be [re, im]");
                v.push_back(cplx{e.at(0).get<double>(), e.at(1).get<double>()});
            } else {
                v.push_back(cplx{e.get<double>(), 0.0});
            }
        }
        return v;
    };
    if (j.contains("transform")) {
        auto coeffs = to_list(j["transform"]);
        std::uint64_t n = coeffs.size();
        return ResolvedFunction{make_from_transform(std::move(name), std::move(coeffs), t), n};
    }
    if (j.contains("values")) {
        auto values = to_list(j["values"]);
        std::uint64_t n = values.size();
        return ResolvedFunction{make_from_values(std::move(name), std::move(values)), n};
    }
    throw std::invalid_argument("function file " + path + " needs 'transform' or 'values'");
}

inline ResolvedFunction resolve_function(const FunctionSpec& fs, const SieveTables& t) {
    if (fs.name == "one") return {make_one(), 1};
    if (fs.name == "mangoldt") return {make_mangoldt(t), 0};
    if (fs.name == "sigma") return {make_sigma(parse_double(fs.get_or("s", "1")), t), 0};
    if (fs.name == "prod-minus") return {make_prod_minus(parse_double(fs.get_or("s", "1")), t), 0};
    if (fs.name == "prod-plus") return {make_prod_plus(parse_double(fs.get_or("s", "1")), t), 0};
    if (fs.name == "block")
        return {make_block(parse_complex(fs.get("c1")), parse_complex(fs.get("c2")),
                           parse_uint(fs.get("H"))),
                0};
    if (fs.name == "file") return load_custom_function(fs.get("path"), t);
    if (fs.name == "coeffs") {
        auto coeffs = parse_complex_list(fs.get("v"));
        std::uint64_t n = coeffs.size();
        return {make_from_transform("coeffs", std::move(coeffs), t), n};
    }
    throw std::invalid_argument("unknown function name '" + fs.name
                                + "' (expected one|mangoldt|sigma|prod-minus|prod-plus|block|file|coeffs)");
}

// truncation priority: explicit D key, then the caller's fallback, then the
// spec's natural length (custom lists)
inline std::uint64_t resolve_truncation(const FunctionSpec& fs, const ResolvedFunction& rf,
                                        std::uint64_t fallback_D) {
    if (fs.has("D")) return parse_uint(fs.get("D"));
    if (fallback_D > 0) return fallback_D;
    if (rf.natural_truncation > 0) return rf.natural_truncation;
    throw std::invalid_argument("function spec '" + fs.name + "' needs D=<truncation>");
}

inline TruncatedDivisorSum resolve_tds(const FunctionSpec& fs, const SieveTables& t,
                                       std::uint64_t fallback_D = 0) {
    auto rf = resolve_function(fs, t);
    return eratosthenes_transform(rf.fn, resolve_truncation(fs, rf, fallback_D), t);
}

} // namespace fre
