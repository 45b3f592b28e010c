#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "globeprobe/csv.hpp"
#include "globeprobe/errors.hpp"
#include "globeprobe/likert.hpp"
#include "globeprobe/text.hpp"

namespace globeprobe {

enum class Locale { EN, FR };

inline const char* locale_code(Locale l) { return l == Locale::EN ? "EN" : "FR"; }

inline Locale parse_locale(std::string_view s) {
    const std::string lower = to_lower(s);
    if (lower == "en") return Locale::EN;
    if (lower == "fr") return Locale::FR;
    throw UnsupportedLocaleError("unsupported locale '" + std::string(s) +
                                 "' (the catalog ships EN and FR)");
}

constexpr int kItemCount = 39;

struct SurveyItem {
    enum class Format { AgreementStatement, AnchoredQuestion };

    int item_id = 0;
    std::string topic;
    Format format = Format::AnchoredQuestion;
    LikertScale scale;
    std::string prompt_text;
};

inline const char* format_name(SurveyItem::Format f) {
    return f == SurveyItem::Format::AgreementStatement ? "agreement-statement"
                                                       : "anchored-question";
}

/// The 39 questionnaire items in both catalog locales. Immutable after load.
class SurveyCatalog {
public:
    /// Load catalog_en.tsv and catalog_fr.tsv from `data_dir` and validate
    /// the catalog invariants.
    static SurveyCatalog load(const std::filesystem::path& data_dir) {
        SurveyCatalog cat;
        cat.locales_[0] = load_one(data_dir / "catalog_en.tsv", Locale::EN);
        cat.locales_[1] = load_one(data_dir / "catalog_fr.tsv", Locale::FR);
        for (int i = 0; i < kItemCount; ++i) {
            const SurveyItem& en = cat.locales_[0][i];
            const SurveyItem& fr = cat.locales_[1][i];
            if (en.topic != fr.topic || en.format != fr.format)
                throw DataError("catalog: EN/FR disagree on item " + std::to_string(i + 1));
        }
        return cat;
    }

    /// All 39 items for a locale, ordered by item_id.
    const std::vector<SurveyItem>& items(Locale locale) const {
        return locales_[locale == Locale::EN ? 0 : 1];
    }

    const SurveyItem& item(int item_id, Locale locale) const {
        if (item_id < 1 || item_id > kItemCount)
            throw UnknownItemError("unknown item id " + std::to_string(item_id) +
                                   " (valid ids are 1.." + std::to_string(kItemCount) + ")");
        return items(locale)[static_cast<size_t>(item_id - 1)];
    }

    /// Verbatim prompt text. Rendering is pure: same inputs, same output.
    const std::string& render_prompt(int item_id, Locale locale) const {
        return item(item_id, locale).prompt_text;
    }

    const LikertScale& item_scale(int item_id, Locale locale = Locale::EN) const {
        return item(item_id, locale).scale;
    }

private:
    static std::vector<SurveyItem> load_one(const std::filesystem::path& path, Locale locale) {
        const DsvTable t = read_tsv(path);
        const size_t c_id = t.col("item_id");
        const size_t c_loc = t.col("locale");
        const size_t c_topic = t.col("topic");
        const size_t c_fmt = t.col("format");
        const size_t c_lo = t.col("low_anchor");
        const size_t c_hi = t.col("high_anchor");
        const size_t c_text = t.col("prompt_text");

        if (t.rows.size() != kItemCount)
            throw DataError(path.string() + ": expected " + std::to_string(kItemCount) +
                            " items, found " + std::to_string(t.rows.size()));

        const char* expected_prefix = locale == Locale::EN
            ? "I am interested in the norms, values, and practices in society"
            : "Je m'intéresse à ce que les normes";

        std::vector<SurveyItem> items(kItemCount);
        std::array<bool, kItemCount> seen{};
        for (const auto& row : t.rows) {
            SurveyItem it;
            it.item_id = parse_int(row[c_id], "item_id");
            if (it.item_id < 1 || it.item_id > kItemCount)
                throw DataError(path.string() + ": item_id out of range");
            if (seen[static_cast<size_t>(it.item_id - 1)])
                throw DataError(path.string() + ": duplicate item " + row[c_id]);
            seen[static_cast<size_t>(it.item_id - 1)] = true;
            if (row[c_loc] != locale_code(locale))
                throw DataError(path.string() + ": unexpected locale '" + row[c_loc] + "'");
            it.topic = row[c_topic];
            if (row[c_fmt] == "agreement-statement")
                it.format = SurveyItem::Format::AgreementStatement;
            else if (row[c_fmt] == "anchored-question")
                it.format = SurveyItem::Format::AnchoredQuestion;
            else
                throw DataError(path.string() + ": unknown format '" + row[c_fmt] + "'");
            it.scale = LikertScale{1, 7, row[c_lo], row[c_hi]};
            if (it.scale.low_anchor.empty() || it.scale.high_anchor.empty())
                throw DataError(path.string() + ": empty anchor on item " + row[c_id]);
            it.prompt_text = row[c_text];
            if (!starts_with(it.prompt_text, expected_prefix))
                throw DataError(path.string() + ": item " + row[c_id] +
                                " does not start with the catalog preamble");
            items[static_cast<size_t>(it.item_id - 1)] = std::move(it);
        }
        return items;
    }

    std::array<std::vector<SurveyItem>, 2> locales_;
};

}  // namespace globeprobe
