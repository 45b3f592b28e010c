#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "globeprobe/errors.hpp"

namespace globeprobe {

/// The nine GLOBE societal-practice dimensions, in the canonical order used
/// by all tables and data files.
enum class Dimension {
    UncertaintyAvoidance = 0,
    FutureOrientation,
    PowerDistance,
    InstitutionalCollectivism,
    HumaneOrientation,
    PerformanceOrientation,
    InGroupCollectivism,
    GenderEgalitarianism,
    Assertiveness,
};

constexpr size_t kDimensionCount = 9;

constexpr std::array<Dimension, kDimensionCount> kDimensions{
    Dimension::UncertaintyAvoidance,    Dimension::FutureOrientation,
    Dimension::PowerDistance,           Dimension::InstitutionalCollectivism,
    Dimension::HumaneOrientation,       Dimension::PerformanceOrientation,
    Dimension::InGroupCollectivism,     Dimension::GenderEgalitarianism,
    Dimension::Assertiveness,
};

constexpr std::array<const char*, kDimensionCount> kDimensionAbbrev{
    "UAV", "FUT", "POW", "CO1", "HUM", "PER", "CO2", "GEN", "ASS"};

constexpr std::array<const char*, kDimensionCount> kDimensionNames{
    "Uncertainty avoidance",   "Future orientation",      "Power distance",
    "Institutional collectivism", "Humane orientation",   "Performance orientation",
    "In-group collectivism",   "Gender egalitarianism",   "Assertiveness"};

inline const char* dimension_abbrev(Dimension d) {
    return kDimensionAbbrev[static_cast<size_t>(d)];
}

inline const char* dimension_name(Dimension d) {
    return kDimensionNames[static_cast<size_t>(d)];
}

inline Dimension parse_dimension(std::string_view abbrev) {
    for (size_t i = 0; i < kDimensionCount; ++i)
        if (abbrev == kDimensionAbbrev[i]) return static_cast<Dimension>(i);
    throw DataError("unknown dimension '" + std::string(abbrev) + "'");
}

/// Nine societal-practice scores, each on the 1..7 scale.
struct DimensionProfile {
    std::array<double, kDimensionCount> values{};

    double& operator[](Dimension d) { return values[static_cast<size_t>(d)]; }
    double operator[](Dimension d) const { return values[static_cast<size_t>(d)]; }

    void validate() const {
        for (size_t i = 0; i < kDimensionCount; ++i)
            if (!(values[i] >= 1.0 && values[i] <= 7.0))
                throw DataError(std::string("dimension ") + kDimensionAbbrev[i] +
                                " outside the 1..7 scale");
    }
};

}  // namespace globeprobe
