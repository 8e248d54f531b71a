#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

// Tabular command output. Cells are formatted once, as strings, so the CSV
// and JSON encodings of a report are byte-stable across runs and platforms.

namespace fedcarbon {

/// Doubles print at 6 significant digits everywhere a report is involved.
inline std::string format_g6(double v) {
    if (v == 0.0) v = 0.0;   // fold -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Report {
    std::vector<std::pair<std::string, std::string>> meta;   // emitted in insertion order
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_meta(std::string key, std::string value) {
        meta.emplace_back(std::move(key), std::move(value));
    }
};

namespace detail {
inline std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}
}

/// CSV with `# key=value` metadata lines before the header.
inline std::string to_csv(const Report& r) {
    std::string out;
    for (const auto& [key, value] : r.meta) out += "# " + key + "=" + value + "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_escape(r.columns[i]);
    }
    out += '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += detail::csv_escape(row[i]);
        }
        out += '\n';
    }
    return out;
}

/// JSON with the same pre-formatted cells as the CSV.
inline std::string to_json_text(const Report& r) {
    nlohmann::ordered_json j;
    j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.meta) j["meta"][key] = value;
    j["columns"] = r.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i)
            o[r.columns[i]] = row[i];
        j["rows"].push_back(std::move(o));
    }
    return j.dump(2) + "\n";
}

}
