#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "globeprobe/catalog.hpp"
#include "globeprobe/csv.hpp"
#include "globeprobe/dimensions.hpp"
#include "globeprobe/errors.hpp"
#include "globeprobe/text.hpp"

namespace globeprobe {

/// One reference society with its nine practice scores. The qualifier
/// separates the multi-sample societies ("French speaking", "Black sample",
/// "West", ...).
struct CountryProfile {
    std::string society_name;
    std::string qualifier;
    DimensionProfile profile;

    std::string display_name() const {
        return qualifier.empty() ? society_name : society_name + " (" + qualifier + ")";
    }
};

/// FNV-1a of the shipped societies file; guards against accidental edits of
/// the transcribed reference scores.
inline constexpr std::uint64_t kSocietiesChecksum = 0x08a50622be7154dbULL;

constexpr size_t kSocietyCount = 62;

/// The 62 reference societies plus the four published probe profiles
/// (two chat systems, each prompted in EN and FR).
struct ReferenceData {
    std::vector<CountryProfile> societies;

    struct LlmProfile {
        std::string model;  // "chatgpt" | "bard"
        Locale locale = Locale::EN;
        DimensionProfile profile;
    };
    std::vector<LlmProfile> llm_profiles;

    const CountryProfile* find(const std::string& name, const std::string& qualifier) const {
        for (const auto& s : societies)
            if (s.society_name == name && s.qualifier == qualifier) return &s;
        return nullptr;
    }

    const DimensionProfile& llm(const std::string& model, Locale locale) const {
        for (const auto& p : llm_profiles)
            if (p.model == model && p.locale == locale) return p.profile;
        throw DataError("no reference profile for model '" + model + "' locale " +
                        locale_code(locale));
    }

    static ReferenceData load(const std::filesystem::path& data_dir,
                              bool verify_checksum = true) {
        ReferenceData ref;
        const auto societies_path = data_dir / "globe_societies.csv";
        if (verify_checksum) {
            const std::string bytes = read_file(societies_path);
            if (fnv1a64(bytes) != kSocietiesChecksum)
                throw DataError(societies_path.string() +
                                ": checksum mismatch; the reference scores were edited");
        }

        const DsvTable t = read_csv(societies_path);
        std::vector<std::string> bad;
        for (size_t r = 0; r < t.rows.size(); ++r) {
            const auto& row = t.rows[r];
            try {
                CountryProfile cp;
                cp.society_name = row[t.col("society_name")];
                cp.qualifier = row[t.col("qualifier")];
                if (cp.society_name.empty()) throw DataError("empty society name");
                for (size_t d = 0; d < kDimensionCount; ++d)
                    cp.profile.values[d] =
                        parse_double(row[t.col(kDimensionAbbrev[d])], kDimensionAbbrev[d]);
                cp.profile.validate();
                if (ref.find(cp.society_name, cp.qualifier) != nullptr)
                    throw DataError("duplicate society");
                ref.societies.push_back(std::move(cp));
            } catch (const DataError& e) {
                bad.push_back("row " + std::to_string(r + 2) + ": " + e.what());
            }
        }
        if (!bad.empty()) {
            std::string msg = societies_path.string() + ": invalid rows:";
            for (const auto& b : bad) msg += "\n  " + b;
            throw DataError(msg);
        }
        if (ref.societies.size() != kSocietyCount)
            throw DataError(societies_path.string() + ": expected " +
                            std::to_string(kSocietyCount) + " societies, found " +
                            std::to_string(ref.societies.size()));

        const DsvTable p = read_csv(data_dir / "llm_profiles.csv");
        for (const auto& row : p.rows) {
            LlmProfile lp;
            lp.model = row[p.col("model")];
            lp.locale = parse_locale(row[p.col("locale")]);
            for (size_t d = 0; d < kDimensionCount; ++d)
                lp.profile.values[d] =
                    parse_double(row[p.col(kDimensionAbbrev[d])], kDimensionAbbrev[d]);
            lp.profile.validate();
            ref.llm_profiles.push_back(std::move(lp));
        }
        if (ref.llm_profiles.size() != 4)
            throw DataError("llm_profiles.csv: expected 4 profiles (2 models x EN/FR)");
        return ref;
    }
};

}  // namespace globeprobe
