#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "globeprobe/dimensions.hpp"
#include "globeprobe/errors.hpp"
#include "globeprobe/reference.hpp"

namespace globeprobe {

/// Euclidean distance across the nine dimensions.
inline double euclidean(const DimensionProfile& a, const DimensionProfile& b) {
    double sum = 0.0;
    for (size_t i = 0; i < kDimensionCount; ++i) {
        const double d = a.values[i] - b.values[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

/// Cosine similarity of the two nine-dimensional vectors. Scale invariant;
/// in (0, 1] for positive profiles.
inline double cosine(const DimensionProfile& a, const DimensionProfile& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < kDimensionCount; ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na <= 0.0 || nb <= 0.0)
        throw DomainError("cosine: similarity undefined for a zero vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

enum class DistanceMetric { Euclidean, Cosine };

inline const char* metric_name(DistanceMetric m) {
    return m == DistanceMetric::Euclidean ? "euclidean" : "cosine";
}

inline DistanceMetric parse_metric(std::string_view s) {
    if (s == "euclidean") return DistanceMetric::Euclidean;
    if (s == "cosine") return DistanceMetric::Cosine;
    throw ConfigError("unknown metric '" + std::string(s) + "' (euclidean or cosine)");
}

/// One ranked row: a society with both difference measures to the probed
/// profile.
struct DistanceRow {
    std::string society_name;
    std::string qualifier;
    double euclidean = 0.0;
    double cosine = 0.0;

    std::string display_name() const {
        return qualifier.empty() ? society_name : society_name + " (" + qualifier + ")";
    }
};

/// All societies ranked by the chosen metric: ascending Euclidean distance
/// or descending cosine similarity, ties broken by society name.
inline std::vector<DistanceRow> rank_table(const DimensionProfile& profile,
                                           const std::vector<CountryProfile>& societies,
                                           DistanceMetric metric) {
    std::vector<DistanceRow> rows;
    rows.reserve(societies.size());
    for (const CountryProfile& s : societies) {
        DistanceRow r;
        r.society_name = s.society_name;
        r.qualifier = s.qualifier;
        r.euclidean = euclidean(profile, s.profile);
        r.cosine = cosine(profile, s.profile);
        rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end(), [metric](const DistanceRow& a, const DistanceRow& b) {
        if (metric == DistanceMetric::Euclidean) {
            if (a.euclidean != b.euclidean) return a.euclidean < b.euclidean;
        } else {
            if (a.cosine != b.cosine) return a.cosine > b.cosine;
        }
        if (a.society_name != b.society_name) return a.society_name < b.society_name;
        return a.qualifier < b.qualifier;
    });
    return rows;
}

}  // namespace globeprobe
