#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "globeprobe/dimensions.hpp"
#include "globeprobe/errors.hpp"
#include "globeprobe/scoring.hpp"

namespace globeprobe {

/// Candidate items per dimension, grouped by questionnaire topic. These seed
/// the exhaustive key search; the search decides membership and direction.
using CandidateMap = std::array<std::vector<int>, kDimensionCount>;

inline CandidateMap default_candidates() {
    CandidateMap c;
    c[static_cast<size_t>(Dimension::UncertaintyAvoidance)] = {1, 16, 19, 24};
    c[static_cast<size_t>(Dimension::FutureOrientation)] = {3, 4, 8, 30, 31};
    c[static_cast<size_t>(Dimension::PowerDistance)] = {5, 13, 26, 27, 34};
    c[static_cast<size_t>(Dimension::InstitutionalCollectivism)] = {7, 12, 29, 35};
    c[static_cast<size_t>(Dimension::HumaneOrientation)] = {9, 21, 25, 32, 33};
    c[static_cast<size_t>(Dimension::PerformanceOrientation)] = {15, 18, 20};
    c[static_cast<size_t>(Dimension::InGroupCollectivism)] = {11, 23, 28, 39};
    c[static_cast<size_t>(Dimension::GenderEgalitarianism)] = {17, 22, 36, 38};
    c[static_cast<size_t>(Dimension::Assertiveness)] = {2, 6, 10, 14, 37};
    return c;
}

/// Search result for one dimension: the minimal residual and every
/// subset/flag assignment achieving it.
struct RecoveredDimension {
    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<std::vector<KeyEntry>> tied_assignments;
    bool resolved = false;  // best_residual <= tol
};

namespace detail {

inline double assignment_score(const ItemMeans& means, const std::vector<KeyEntry>& entries) {
    double sum = 0.0;
    for (const KeyEntry& e : entries) {
        const auto& m = means[static_cast<size_t>(e.item_id - 1)];
        if (!m) throw MissingItemError("recover_key: no mean for item " +
                                       std::to_string(e.item_id));
        sum += e.reversed ? 8.0 - *m : *m;
    }
    return sum / static_cast<double>(entries.size());
}

template <typename Fn>
void for_each_assignment(const std::vector<int>& candidates, Fn&& fn) {
    const size_t c = candidates.size();
    std::vector<KeyEntry> entries;
    for (unsigned subset = 1; subset < (1u << c); ++subset) {
        entries.clear();
        for (size_t i = 0; i < c; ++i)
            if (subset & (1u << i)) entries.push_back(KeyEntry{candidates[i], false});
        const size_t r = entries.size();
        for (unsigned flags = 0; flags < (1u << r); ++flags) {
            for (size_t i = 0; i < r; ++i) entries[i].reversed = (flags & (1u << i)) != 0;
            fn(entries);
        }
    }
}

}  // namespace detail

/// Exhaustive per-dimension search over non-empty candidate subsets and
/// reversal flags for the assignment whose score is closest to the target.
/// Ties (within 1e-12 of the best residual) are all reported.
inline std::array<RecoveredDimension, kDimensionCount> recover_key(
    const ItemMeans& item_means, const DimensionProfile& target, const CandidateMap& candidates,
    double tol = 0.005) {
    std::array<RecoveredDimension, kDimensionCount> out;
    for (Dimension d : kDimensions) {
        const auto& cand = candidates[static_cast<size_t>(d)];
        if (cand.empty())
            throw DataError(std::string("recover_key: no candidates for ") + dimension_abbrev(d));
        if (cand.size() > 8)
            throw DataError(std::string("recover_key: candidate set for ") + dimension_abbrev(d) +
                            " exceeds 8 items");
        RecoveredDimension& rec = out[static_cast<size_t>(d)];
        detail::for_each_assignment(cand, [&](const std::vector<KeyEntry>& entries) {
            const double res = std::fabs(detail::assignment_score(item_means, entries) - target[d]);
            if (res < rec.best_residual - 1e-12) {
                rec.best_residual = res;
                rec.tied_assignments.clear();
                rec.tied_assignments.push_back(entries);
            } else if (res <= rec.best_residual + 1e-12) {
                rec.tied_assignments.push_back(entries);
            }
        });
        rec.resolved = rec.best_residual <= tol;
    }
    return out;
}

/// Recover a full key against the primary run and break ties (or settle
/// unresolved dimensions) with a second run that the same key must fit.
/// Unresolved dimensions fall back to the assignment minimizing the summed
/// residual over both runs and are marked unresolved in the key status.
inline ScoringKey freeze_key(const ItemMeans& primary_means, const DimensionProfile& primary_target,
                             const ItemMeans& secondary_means,
                             const DimensionProfile& secondary_target,
                             const CandidateMap& candidates, double tol = 0.005) {
    const auto recovered = recover_key(primary_means, primary_target, candidates, tol);
    ScoringKey key;
    for (Dimension d : kDimensions) {
        const RecoveredDimension& rec = recovered[static_cast<size_t>(d)];
        std::vector<KeyEntry> chosen;
        if (rec.resolved) {
            // among primary-optimal assignments, pick the best fit to the second run
            double best = std::numeric_limits<double>::infinity();
            for (const auto& entries : rec.tied_assignments) {
                const double res = std::fabs(
                    detail::assignment_score(secondary_means, entries) - secondary_target[d]);
                if (res < best) {
                    best = res;
                    chosen = entries;
                }
            }
        } else {
            // no assignment reaches the target; take the minimal joint residual
            double best = std::numeric_limits<double>::infinity();
            detail::for_each_assignment(candidates[static_cast<size_t>(d)],
                                        [&](const std::vector<KeyEntry>& entries) {
                const double joint =
                    std::fabs(detail::assignment_score(primary_means, entries) -
                              primary_target[d]) +
                    std::fabs(detail::assignment_score(secondary_means, entries) -
                              secondary_target[d]);
                if (joint < best) {
                    best = joint;
                    chosen = entries;
                }
            });
        }
        std::sort(chosen.begin(), chosen.end(),
                  [](const KeyEntry& a, const KeyEntry& b) { return a.item_id < b.item_id; });
        key.entries(d) = chosen;
        auto& st = key.status(d);
        st.residual_primary =
            std::fabs(detail::assignment_score(primary_means, chosen) - primary_target[d]);
        st.residual_secondary =
            std::fabs(detail::assignment_score(secondary_means, chosen) - secondary_target[d]);
        st.resolved = rec.resolved;
    }
    key.validate();
    return key;
}

}  // namespace globeprobe
