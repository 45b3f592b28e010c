#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "globeprobe/catalog.hpp"
#include "globeprobe/csv.hpp"
#include "globeprobe/errors.hpp"
#include "globeprobe/likert.hpp"
#include "globeprobe/provider.hpp"
#include "globeprobe/text.hpp"
#include "globeprobe/transcript.hpp"

namespace globeprobe {

struct SurveyPlan {
    Locale locale = Locale::EN;
    int repeats = 25;
    std::string run_id;

    void validate() const {
        if (repeats < 1) throw ConfigError("survey plan: repeats must be >= 1");
        if (run_id.empty()) throw ConfigError("survey plan: run_id required");
    }
};

/// Aggregate statistics of one item over the run's repeats.
struct ItemStats {
    int item_id = 0;
    std::optional<double> mean;  // absent when every repeat failed to parse
    std::optional<int> mode;
    double std_dev = 0.0;
    int n_valid = 0;
    int n_failed = 0;
};

struct SurveyRun {
    std::string run_id;
    SurveyPlan plan;
    std::vector<ItemStats> items;                   // exactly 39, by item id
    std::vector<std::optional<double>> item_means;  // index item_id - 1
};

/// Mean, mode and sample standard deviation of the parsed values. The mode
/// picks the most frequent value, ties resolved toward the smallest value;
/// std_dev uses the n-1 divisor and is 0 when fewer than two values exist.
inline ItemStats aggregate(const std::vector<int>& values, int repeats, int item_id = 0) {
    if (repeats < 1) throw DomainError("aggregate: repeats must be >= 1");
    if (static_cast<int>(values.size()) > repeats)
        throw DomainError("aggregate: more values than repeats");
    ItemStats s;
    s.item_id = item_id;
    s.n_valid = static_cast<int>(values.size());
    s.n_failed = repeats - s.n_valid;
    if (values.empty()) return s;

    std::array<int, 8> counts{};
    double sum = 0.0;
    for (int v : values) {
        if (v < 1 || v > 7) throw DomainError("aggregate: value outside 1..7");
        counts[static_cast<size_t>(v)]++;
        sum += v;
    }
    const double mean = sum / s.n_valid;
    s.mean = mean;

    int best = 1;
    for (int v = 2; v <= 7; ++v)
        if (counts[static_cast<size_t>(v)] > counts[static_cast<size_t>(best)]) best = v;
    s.mode = best;

    if (s.n_valid > 1) {
        double ss = 0.0;
        for (int v : values) ss += (v - mean) * (v - mean);
        s.std_dev = std::sqrt(ss / (s.n_valid - 1));
    }
    return s;
}

/// Run the full survey: `repeats` passes over the 39 items in catalog order,
/// one single-turn completion each. Replies land in `store` (when given)
/// before parsing; cells already present in the store are reused, which makes
/// interrupted runs resumable. Parse failures are not fatal, they reduce
/// n_valid.
inline SurveyRun run_survey(const SurveyPlan& plan, const SurveyCatalog& catalog,
                            Provider& provider, TranscriptStore* store = nullptr,
                            const std::function<std::string()>& timestamp = utc_timestamp) {
    plan.validate();
    std::array<std::vector<int>, kItemCount> values;

    for (int repeat = 0; repeat < plan.repeats; ++repeat) {
        for (int item_id = 1; item_id <= kItemCount; ++item_id) {
            const SurveyItem& item = catalog.item(item_id, plan.locale);
            std::string raw;
            bool recorded = false;
            if (store != nullptr) {
                if (const TranscriptRecord* prev = store->find(plan.run_id, item_id, repeat)) {
                    raw = prev->raw_response;
                    recorded = true;
                }
            }
            if (!recorded) {
                PromptContext ctx;
                ctx.item_id = item_id;
                ctx.locale = plan.locale;
                ctx.repeat_index = repeat;
                ctx.prompt_text = item.prompt_text;
                raw = provider.complete(ctx);
            }

            std::optional<int> parsed;
            try {
                parsed = parse_likert(raw, item.scale);
            } catch (const ParseError&) {
                parsed.reset();
            }

            if (store != nullptr && !recorded) {
                TranscriptRecord rec;
                rec.run_id = plan.run_id;
                rec.item_id = item_id;
                rec.locale = plan.locale;
                rec.repeat_index = repeat;
                rec.timestamp = timestamp();
                rec.prompt_text = item.prompt_text;
                rec.raw_response = raw;
                rec.parsed_value = parsed;
                rec.provider_kind = provider.kind_name();
                rec.model_name = provider.model_name();
                store->append(rec);
            }
            if (parsed) values[static_cast<size_t>(item_id - 1)].push_back(*parsed);
        }
    }

    SurveyRun run;
    run.run_id = plan.run_id;
    run.plan = plan;
    run.items.reserve(kItemCount);
    run.item_means.resize(kItemCount);
    for (int item_id = 1; item_id <= kItemCount; ++item_id) {
        ItemStats s = aggregate(values[static_cast<size_t>(item_id - 1)], plan.repeats, item_id);
        run.item_means[static_cast<size_t>(item_id - 1)] = s.mean;
        run.items.push_back(std::move(s));
    }
    return run;
}

/// Item-stats table in the fixed export layout, 3-decimal statistics.
inline std::string item_stats_table(const SurveyRun& run, const SurveyCatalog& catalog) {
    std::ostringstream out;
    out << "item_id\ttopic\tmean\tmode\tstd_dev\tn_valid\tn_failed\n";
    for (const ItemStats& s : run.items) {
        const SurveyItem& item = catalog.item(s.item_id, run.plan.locale);
        out << s.item_id << '\t' << item.topic << '\t';
        if (s.mean) out << format_fixed(*s.mean, 3);
        out << '\t';
        if (s.mode) out << *s.mode;
        out << '\t';
        if (s.mean) out << format_fixed(s.std_dev, 3);
        out << '\t' << s.n_valid << '\t' << s.n_failed << '\n';
    }
    return out.str();
}

/// Read per-item means from any delimiter-separated stats table carrying
/// item_id and mean columns (survey exports, the reference stats file, ...).
/// When the table holds several models or locales, the filters select one.
inline std::vector<std::optional<double>> load_item_means(const std::filesystem::path& path,
                                                          const std::string& model_filter = "",
                                                          const std::string& locale_filter = "") {
    const DsvTable t = path.extension() == ".csv" ? read_csv(path) : read_tsv(path);
    const size_t c_id = t.col("item_id");
    const size_t c_mean = t.col("mean");
    const bool has_model = t.has_col("model");
    const bool has_locale = t.has_col("locale");
    if (!model_filter.empty() && !has_model)
        throw SchemaError(path.string() + ": no 'model' column to filter on");

    std::vector<std::optional<double>> means(kItemCount);
    std::string seen_model;
    for (const auto& row : t.rows) {
        if (has_model && !model_filter.empty() && row[t.col("model")] != model_filter) continue;
        if (has_locale && !locale_filter.empty() && row[t.col("locale")] != locale_filter)
            continue;
        if (has_model && model_filter.empty()) {
            const std::string& m = row[t.col("model")];
            if (seen_model.empty())
                seen_model = m;
            else if (seen_model != m)
                throw DataError(path.string() +
                                ": several models present; pass a model filter");
        }
        const int id = parse_int(row[c_id], "item_id");
        if (id < 1 || id > kItemCount)
            throw DataError(path.string() + ": item_id out of range: " + row[c_id]);
        if (means[static_cast<size_t>(id - 1)])
            throw DataError(path.string() + ": duplicate item " + row[c_id]);
        if (!row[c_mean].empty())
            means[static_cast<size_t>(id - 1)] = parse_double(row[c_mean], "mean");
    }
    return means;
}

}  // namespace globeprobe
