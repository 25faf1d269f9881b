// Internal helpers shared by the config/emission and CLI translation units.
#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/errors.hpp"
#include "zeno/io.hpp"

namespace zeno::io::detail {

// Shortest representation that parses back to the same double; used for
// parameter snapshots so replaying a file is lossless.
inline std::string fmt_short(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Data columns: 12 significant digits.
inline std::string fmt_data(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() &&
           (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline double parse_double(std::string_view value, const std::string& key) {
    const std::string_view v = trim(value);
    double out = 0.0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw ConfigError("config key '" + key + "': cannot parse number '" +
                          std::string(v) + "'");
    }
    return out;
}

inline int parse_int(std::string_view value, const std::string& key) {
    const std::string_view v = trim(value);
    int out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw ConfigError("config key '" + key + "': cannot parse integer '" +
                          std::string(v) + "'");
    }
    return out;
}

inline bool parse_bool(std::string_view value, const std::string& key) {
    const std::string_view v = trim(value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config key '" + key + "': expected true or false, got '" +
                      std::string(v) + "'");
}

inline std::vector<double> parse_value_list(std::string_view value,
                                            const std::string& key) {
    std::vector<double> out;
    std::string_view rest = value;
    while (true) {
        const std::size_t comma = rest.find(',');
        const std::string_view item =
            comma == std::string_view::npos ? rest : rest.substr(0, comma);
        out.push_back(parse_double(item, key));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

inline const char* command_name(Command c) {
    switch (c) {
        case Command::Curve: return "curve";
        case Command::Sweep: return "sweep";
        case Command::Transitions: return "transitions";
    }
    return "?";
}

inline Command parse_command(std::string_view v) {
    if (v == "curve") return Command::Curve;
    if (v == "sweep") return Command::Sweep;
    if (v == "transitions") return Command::Transitions;
    throw ConfigError("unknown command '" + std::string(v) + "'");
}

inline const char* model_name(Model m) {
    return m == Model::TwoLevel ? "sb" : "lsb";
}

inline Model parse_model(std::string_view v) {
    if (v == "sb") return Model::TwoLevel;
    if (v == "lsb") return Model::CollectiveSpin;
    throw ConfigError("unknown model '" + std::string(v) +
                      "' (expected sb or lsb)");
}

inline const char* spacing_name(analysis::Spacing s) {
    return s == analysis::Spacing::Linear ? "linear" : "log";
}

inline analysis::Spacing parse_spacing(std::string_view v) {
    if (v == "linear") return analysis::Spacing::Linear;
    if (v == "log") return analysis::Spacing::Log;
    throw ConfigError("unknown tau_spacing '" + std::string(v) +
                      "' (expected linear or log)");
}

inline const char* format_name(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

inline OutputFormat parse_format(std::string_view v) {
    if (v == "csv") return OutputFormat::Csv;
    if (v == "json") return OutputFormat::Json;
    throw ConfigError("unknown format '" + std::string(v) +
                      "' (expected csv or json)");
}

inline void check_sweep_name(const std::string& name) {
    if (name != "G" && name != "F" && name != "j" && name != "delta" &&
        name != "eps") {
        throw ConfigError("unknown sweep parameter '" + name +
                          "' (expected G, F, j, delta, or eps)");
    }
}

inline std::string join_values(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += fmt_short(values[i]);
    }
    return out;
}

} // namespace zeno::io::detail
