#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "globeprobe/errors.hpp"

namespace globeprobe {

struct LikertScale {
    int min = 1;
    int max = 7;
    std::string low_anchor;
    std::string high_anchor;
};

/// Extract a rating from a free-text reply: the first standalone integer
/// that falls within the scale. "Standalone" means delimited by non-digit
/// characters; digit runs that form part of a decimal numeral ("3.5") are
/// not integers and are skipped.
inline int parse_likert(std::string_view raw, const LikertScale& scale = LikertScale{}) {
    bool saw_integer = false;
    size_t i = 0;
    const size_t n = raw.size();
    while (i < n) {
        if (!std::isdigit(static_cast<unsigned char>(raw[i]))) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < n && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;

        const bool decimal_before =
            i >= 2 && raw[i - 1] == '.' && std::isdigit(static_cast<unsigned char>(raw[i - 2]));
        const bool decimal_after =
            j + 1 < n && raw[j] == '.' && std::isdigit(static_cast<unsigned char>(raw[j + 1]));

        if (!decimal_before && !decimal_after) {
            saw_integer = true;
            long long value = 0;
            bool overflow = false;
            for (size_t p = i; p < j; ++p) {
                value = value * 10 + (raw[p] - '0');
                if (value > 1000000) {
                    overflow = true;
                    break;
                }
            }
            if (!overflow && value >= scale.min && value <= scale.max)
                return static_cast<int>(value);
        }
        i = j;
    }
    if (saw_integer)
        throw OutOfRangeError("reply contains no integer within [" +
                              std::to_string(scale.min) + "," + std::to_string(scale.max) +
                              "]: " + std::string(raw.substr(0, 80)));
    throw NoNumberFoundError("reply contains no number: " + std::string(raw.substr(0, 80)));
}

}  // namespace globeprobe
