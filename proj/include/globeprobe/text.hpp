#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace globeprobe {

inline std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

/// Collapse runs of whitespace into single spaces and trim the ends.
inline std::string normalize_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = true;  // leading whitespace is dropped
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out.push_back(' ');
            out.push_back(c);
            in_ws = false;
        }
    }
    return out;
}

/// Fixed-point formatting with round-half-away-from-zero, matching the
/// 3-decimal table style used throughout the reports.
inline std::string format_fixed(double x, int places) {
    double scale = 1.0;
    for (int i = 0; i < places; ++i) scale *= 10.0;
    double rounded = std::floor(std::fabs(x) * scale + 0.5) / scale;
    rounded = std::copysign(rounded, x);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, rounded);
    return buf;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

}  // namespace globeprobe
