#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "globeprobe/errors.hpp"
#include "globeprobe/text.hpp"

namespace globeprobe {

/// A header-indexed table read from delimiter-separated text.
struct DsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    size_t col(std::string_view name) const {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw SchemaError("missing column '" + std::string(name) + "'");
    }

    bool has_col(std::string_view name) const {
        for (const auto& h : header)
            if (h == name) return true;
        return false;
    }
};

namespace detail {

// One CSV record, honoring double-quoted fields ("" escapes a quote).
inline std::vector<std::string> parse_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace detail

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Read a comma-separated file with a header row.
inline DsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open file: " + path.string());
    DsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = detail::parse_csv_line(line);
        if (first) {
            t.header = std::move(fields);
            first = false;
        } else {
            t.rows.push_back(std::move(fields));
        }
    }
    if (first) throw DataError("empty file: " + path.string());
    return t;
}

/// Read a tab-separated file with a header row. Lines starting with '#'
/// are treated as comments.
inline DsvTable read_tsv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open file: " + path.string());
    DsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (first) {
            t.header = std::move(fields);
            first = false;
        } else {
            t.rows.push_back(std::move(fields));
        }
    }
    if (first) throw DataError("empty file: " + path.string());
    return t;
}

inline double parse_double(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("cannot parse number '" + s + "' for " + what);
    }
}

inline int parse_int(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("cannot parse integer '" + s + "' for " + what);
    }
}

}  // namespace globeprobe
