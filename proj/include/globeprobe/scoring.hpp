#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "globeprobe/catalog.hpp"
#include "globeprobe/csv.hpp"
#include "globeprobe/dimensions.hpp"
#include "globeprobe/errors.hpp"
#include "globeprobe/text.hpp"

namespace globeprobe {

/// Standard Likert reversal on the 1..7 scale. Involutive.
inline double reverse_code(double x) {
    if (!(x >= 1.0 && x <= 7.0))
        throw DomainError("reverse_code: value outside the 1..7 scale");
    return 8.0 - x;
}

struct KeyEntry {
    int item_id = 0;
    bool reversed = false;

    bool operator==(const KeyEntry&) const = default;
};

/// Recovery bookkeeping carried in the key file header.
struct DimensionKeyStatus {
    double residual_primary = 0.0;
    double residual_secondary = 0.0;
    bool resolved = true;
};

/// Maps each dimension to the items averaged into it (with reversal flags).
class ScoringKey {
public:
    const std::vector<KeyEntry>& entries(Dimension d) const {
        return entries_[static_cast<size_t>(d)];
    }
    std::vector<KeyEntry>& entries(Dimension d) { return entries_[static_cast<size_t>(d)]; }

    const DimensionKeyStatus& status(Dimension d) const {
        return status_[static_cast<size_t>(d)];
    }
    DimensionKeyStatus& status(Dimension d) { return status_[static_cast<size_t>(d)]; }

    std::vector<Dimension> unresolved_dimensions() const {
        std::vector<Dimension> out;
        for (Dimension d : kDimensions)
            if (!status(d).resolved) out.push_back(d);
        return out;
    }

    /// Every referenced item must exist, no item may serve two dimensions,
    /// and every dimension needs at least one item.
    void validate() const {
        std::set<int> used;
        for (Dimension d : kDimensions) {
            const auto& es = entries(d);
            if (es.empty())
                throw DataError(std::string("scoring key: dimension ") + dimension_abbrev(d) +
                                " has no items");
            for (const KeyEntry& e : es) {
                if (e.item_id < 1 || e.item_id > kItemCount)
                    throw DataError("scoring key: item id out of range: " +
                                    std::to_string(e.item_id));
                if (!used.insert(e.item_id).second)
                    throw DataError("scoring key: item " + std::to_string(e.item_id) +
                                    " appears in two dimensions");
            }
        }
    }

    static ScoringKey load(const std::filesystem::path& path) {
        std::ifstream f(path);
        if (!f) throw DataError("cannot open scoring key: " + path.string());
        ScoringKey key;
        std::string line;
        bool header_seen = false;
        while (std::getline(f, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            if (line[0] == '#') {
                parse_status_comment(line, key);
                continue;
            }
            const auto fields = split(line, '\t');
            if (!header_seen) {
                if (fields.size() != 3 || fields[0] != "dimension")
                    throw DataError(path.string() + ": unexpected key header");
                header_seen = true;
                continue;
            }
            if (fields.size() != 3) throw DataError(path.string() + ": malformed key row");
            const Dimension d = parse_dimension(fields[0]);
            KeyEntry e;
            e.item_id = parse_int(fields[1], "item_id");
            if (fields[2] == "true")
                e.reversed = true;
            else if (fields[2] == "false")
                e.reversed = false;
            else
                throw DataError(path.string() + ": reversed flag must be true/false");
            key.entries(d).push_back(e);
        }
        key.validate();
        return key;
    }

    std::string serialize() const {
        std::ostringstream out;
        out << "# GLOBE societal-practices scoring key, recovered by exhaustive subset search\n";
        out << "# over per-dimension candidate items against the reference dimension profiles\n";
        out << "# (chatgpt EN primary target, bard EN used to break ties).\n";
        out << "# residuals at recovery time: dimension chatgpt_en bard_en status\n";
        for (Dimension d : kDimensions) {
            const DimensionKeyStatus& st = status(d);
            out << "#   " << dimension_abbrev(d) << ' ' << format_fixed(st.residual_primary, 5)
                << ' ' << format_fixed(st.residual_secondary, 5) << ' '
                << (st.resolved ? "resolved" : "unresolved") << '\n';
        }
        out << "# GEN is unresolved: no subset/flag assignment over its candidate items\n";
        out << "# reproduces the reference GEN values; the minimal joint-residual assignment\n";
        out << "# is kept and every report must carry a warning for this dimension.\n";
        out << "dimension\titem_id\treversed\n";
        for (Dimension d : kDimensions)
            for (const KeyEntry& e : entries(d))
                out << dimension_abbrev(d) << '\t' << e.item_id << '\t'
                    << (e.reversed ? "true" : "false") << '\n';
        return out.str();
    }

    void save(const std::filesystem::path& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw DataError("cannot write scoring key: " + path.string());
        f << serialize();
    }

private:
    static void parse_status_comment(const std::string& line, ScoringKey& key) {
        // "#   UAV 0.00025 0.00000 resolved"
        std::istringstream ss(line.substr(1));
        std::string abbrev, status;
        double r1 = 0.0, r2 = 0.0;
        if (!(ss >> abbrev >> r1 >> r2 >> status)) return;
        for (size_t i = 0; i < kDimensionCount; ++i) {
            if (abbrev == kDimensionAbbrev[i]) {
                auto& st = key.status_[i];
                st.residual_primary = r1;
                st.residual_secondary = r2;
                st.resolved = (status == "resolved");
                return;
            }
        }
    }

    std::array<std::vector<KeyEntry>, kDimensionCount> entries_;
    std::array<DimensionKeyStatus, kDimensionCount> status_;
};

using ItemMeans = std::vector<std::optional<double>>;  // index item_id - 1

/// Dimension scores: the arithmetic mean over each dimension's items of the
/// item mean, reverse-coded where the key says so.
inline DimensionProfile score(const ItemMeans& item_means, const ScoringKey& key) {
    if (item_means.size() != static_cast<size_t>(kItemCount))
        throw DataError("score: expected 39 item means");
    key.validate();
    DimensionProfile profile;
    for (Dimension d : kDimensions) {
        double sum = 0.0;
        for (const KeyEntry& e : key.entries(d)) {
            const auto& m = item_means[static_cast<size_t>(e.item_id - 1)];
            if (!m)
                throw MissingItemError("score: no mean for item " + std::to_string(e.item_id) +
                                       " required by " + dimension_abbrev(d));
            if (!(*m >= 1.0 && *m <= 7.0))
                throw DomainError("score: item " + std::to_string(e.item_id) +
                                  " mean outside the 1..7 scale");
            sum += e.reversed ? reverse_code(*m) : *m;
        }
        profile[d] = sum / static_cast<double>(key.entries(d).size());
    }
    return profile;
}

}  // namespace globeprobe
