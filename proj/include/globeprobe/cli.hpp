#pragma once

// Command implementations behind the CLI. Each command validates its inputs,
// throws on failure (the binary maps exception families to exit codes) and
// writes its outputs into an explicit run directory.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "globeprobe/catalog.hpp"
#include "globeprobe/http_provider.hpp"
#include "globeprobe/indicators.hpp"
#include "globeprobe/key_recovery.hpp"
#include "globeprobe/metrics.hpp"
#include "globeprobe/ols.hpp"
#include "globeprobe/reference.hpp"
#include "globeprobe/reporting.hpp"
#include "globeprobe/scoring.hpp"
#include "globeprobe/sensitivity.hpp"
#include "globeprobe/survey.hpp"
#include "globeprobe/transcript.hpp"

namespace globeprobe::cli {

namespace fs = std::filesystem;

inline void require_file(const fs::path& p, const std::string& what) {
    if (p.empty()) throw ConfigError(what + ": no path given");
    if (!fs::exists(p)) throw ConfigError(what + " not found: " + p.string());
}

inline void ensure_dir(const fs::path& p) {
    if (p.empty()) throw ConfigError("output directory required (--out)");
    fs::create_directories(p);
}

// ---------------------------------------------------------------- catalog

struct CatalogOptions {
    std::string locale = "en";
};

inline void cmd_catalog(const fs::path& data_dir, const CatalogOptions& opt, std::ostream& out) {
    const Locale locale = parse_locale(opt.locale);
    const SurveyCatalog catalog = SurveyCatalog::load(data_dir);
    out << "item_id\ttopic\tprompt_text\n";
    for (const SurveyItem& item : catalog.items(locale))
        out << item.item_id << '\t' << item.topic << '\t' << item.prompt_text << '\n';
}

// ---------------------------------------------------------------- survey

struct SurveyOptions {
    std::string locale = "en";
    int repeats = 25;
    std::string run_id;
    fs::path out_dir;

    fs::path replay;  // transcript to replay
    std::string replay_run;
    std::string scripted_reply;  // fixed-reply provider when set
    std::string endpoint;        // live endpoint when set
    std::string model;
    std::string auth_env;
    std::optional<double> temperature;
    int max_retries = 2;
    int rpm = 60;
    fs::path transcript;  // live/scripted capture file
};

inline ProviderConfig provider_config_from(const SurveyOptions& opt) {
    ProviderConfig cfg;
    if (!opt.replay.empty()) {
        cfg.kind = ProviderKind::Replay;
        cfg.replay_transcript = opt.replay;
        cfg.replay_run_id = opt.replay_run;
    } else if (!opt.scripted_reply.empty()) {
        cfg.kind = ProviderKind::Scripted;
        cfg.scripted_reply = opt.scripted_reply;
    } else if (!opt.endpoint.empty()) {
        cfg.kind = ProviderKind::LiveEndpoint;
        cfg.endpoint_url = opt.endpoint;
        cfg.model_name = opt.model;
        cfg.auth_token_env_var = opt.auth_env;
        cfg.temperature = opt.temperature;
    } else {
        throw ConfigError("choose a provider: --replay, --scripted-reply or --endpoint");
    }
    cfg.max_retries = opt.max_retries;
    cfg.requests_per_minute_cap = opt.rpm;
    cfg.validate();
    return cfg;
}

inline SurveyRun run_survey_command(const fs::path& data_dir, const SurveyOptions& opt,
                                    RunManifest& manifest) {
    const SurveyCatalog catalog = SurveyCatalog::load(data_dir);
    SurveyPlan plan;
    plan.locale = parse_locale(opt.locale);
    plan.repeats = opt.repeats;
    plan.run_id = opt.run_id;

    const ProviderConfig cfg = provider_config_from(opt);
    std::unique_ptr<TranscriptStore> store;
    std::unique_ptr<Provider> provider;

    if (cfg.kind == ProviderKind::Replay) {
        require_file(cfg.replay_transcript, "replay transcript");
        auto records = TranscriptStore::read_all(cfg.replay_transcript);
        if (records.empty()) throw DataError("replay transcript is empty");
        std::string run = cfg.replay_run_id.empty() ? records.front().run_id : cfg.replay_run_id;
        if (plan.run_id.empty()) plan.run_id = run;
        provider = std::make_unique<ReplayProvider>(std::move(records), run);
        manifest.config["replay_transcript"] = cfg.replay_transcript.string();
    } else {
        if (plan.run_id.empty()) plan.run_id = "run";
        provider = make_provider(cfg);
        fs::path capture = opt.transcript;
        if (capture.empty()) capture = opt.out_dir / "transcript.jsonl";
        store = std::make_unique<TranscriptStore>(capture);
        manifest.config["transcript"] = capture.string();
    }

    manifest.config["provider_kind"] = provider_kind_name(cfg.kind);
    manifest.config["locale"] = locale_code(plan.locale);
    manifest.config["repeats"] = std::to_string(plan.repeats);
    manifest.config["run_id"] = plan.run_id;
    if (cfg.kind == ProviderKind::LiveEndpoint) {
        manifest.config["endpoint_url"] = cfg.endpoint_url;
        manifest.config["model_name"] = cfg.model_name;
        manifest.config["requests_per_minute_cap"] = std::to_string(cfg.requests_per_minute_cap);
        manifest.config["max_retries"] = std::to_string(cfg.max_retries);
        if (cfg.temperature) manifest.config["temperature"] = format_full(*cfg.temperature);
    }

    return run_survey(plan, catalog, *provider, store.get());
}

inline void cmd_survey(const fs::path& data_dir, const SurveyOptions& opt, std::ostream& out) {
    ensure_dir(opt.out_dir);
    RunManifest manifest;
    manifest.command = "survey";
    manifest.config["data_dir"] = data_dir.string();
    const SurveyCatalog catalog = SurveyCatalog::load(data_dir);
    const SurveyRun run = run_survey_command(data_dir, opt, manifest);
    const std::string table = item_stats_table(run, catalog);
    write_text_file(opt.out_dir / "item_stats.tsv", table);
    manifest.config["item_stats"] = (opt.out_dir / "item_stats.tsv").string();
    manifest.write(opt.out_dir);
    out << table;
}

// ---------------------------------------------------------------- score

struct ScoreOptions {
    fs::path item_stats;
    std::string model_filter;
    std::string locale_filter;
    fs::path key;  // defaults to <data_dir>/scoring_key.tsv
    fs::path out_dir;
};

inline void cmd_score(const fs::path& data_dir, const ScoreOptions& opt, std::ostream& out) {
    require_file(opt.item_stats, "item-stats file");
    const fs::path key_path = opt.key.empty() ? data_dir / "scoring_key.tsv" : opt.key;
    require_file(key_path, "scoring key file");
    ensure_dir(opt.out_dir);

    const ScoringKey key = ScoringKey::load(key_path);
    const ItemMeans means = load_item_means(opt.item_stats, opt.model_filter, opt.locale_filter);
    const DimensionProfile profile = score(means, key);

    write_text_file(opt.out_dir / "profile.csv", profile_csv(profile));
    RunManifest manifest;
    manifest.command = "score";
    manifest.config["item_stats"] = opt.item_stats.string();
    manifest.config["scoring_key"] = key_path.string();
    if (!opt.model_filter.empty()) manifest.config["model_filter"] = opt.model_filter;
    manifest.write(opt.out_dir);

    out << "dimension\tabbrev\tvalue\n";
    for (Dimension d : kDimensions)
        out << dimension_name(d) << '\t' << dimension_abbrev(d) << '\t'
            << format_fixed(profile[d], 3) << '\n';
    for (Dimension d : key.unresolved_dimensions())
        out << "WARNING: the scoring key for " << dimension_name(d)
            << " is unresolved (best residual " << format_fixed(key.status(d).residual_primary, 3)
            << "); treat this dimension's scores with caution\n";
}

// ---------------------------------------------------------------- distances

struct DistancesOptions {
    fs::path profile;   // profile.csv from cmd_score, or ...
    std::string model;  // ... an embedded reference profile
    std::string locale = "en";
    std::string metric = "euclidean";
    fs::path out_dir;
};

inline void cmd_distances(const fs::path& data_dir, const DistancesOptions& opt,
                          std::ostream& out) {
    const DistanceMetric metric = parse_metric(opt.metric);
    const ReferenceData ref = ReferenceData::load(data_dir);

    DimensionProfile profile;
    RunManifest manifest;
    manifest.command = "distances";
    if (!opt.profile.empty()) {
        require_file(opt.profile, "profile file");
        profile = load_profile_csv(opt.profile);
        manifest.config["profile"] = opt.profile.string();
    } else if (!opt.model.empty()) {
        profile = ref.llm(opt.model, parse_locale(opt.locale));
        manifest.config["model"] = opt.model;
        manifest.config["locale"] = opt.locale;
    } else {
        throw ConfigError("choose a profile: --profile FILE or --model chatgpt|bard");
    }
    manifest.config["metric"] = metric_name(metric);

    const auto rows = rank_table(profile, ref.societies, metric);
    ensure_dir(opt.out_dir);
    write_text_file(opt.out_dir / "distances.tsv", distances_tsv(rows));
    manifest.write(opt.out_dir);
    out << distances_pretty(rows);
}

// ---------------------------------------------------------------- regress

struct RegressOptions {
    fs::path distances;
    fs::path indicators;
    std::string model_spec = "A";
    std::string metric = "euclidean";
    fs::path out_dir;
};

inline RegressionResult fit_dataset(const RegressionDataset& ds) {
    if (ds.n() <= ds.k() + 1)
        throw DataError("regression needs more complete rows than predictors (have " +
                        std::to_string(ds.n()) + " rows for " + std::to_string(ds.k()) +
                        " predictors, " + std::to_string(ds.dropped.size()) +
                        " rows dropped for missing indicator values)");
    return ols(ds.predictors, ds.y, ds.predictor_names);
}

inline void cmd_regress(const fs::path&, const RegressOptions& opt, std::ostream& out) {
    require_file(opt.distances, "distances file");
    require_file(opt.indicators, "indicators file");
    const ModelSpec spec = parse_model_spec(opt.model_spec);
    const DistanceMetric metric = parse_metric(opt.metric);

    const auto distances = load_distances_tsv(opt.distances);
    const DsvTable indicators = read_csv(opt.indicators);
    const RegressionDataset ds = assemble_dataset(distances, indicators, spec, metric);
    const RegressionResult res = fit_dataset(ds);

    ensure_dir(opt.out_dir);
    write_text_file(opt.out_dir / "regression.tsv", regression_tsv(res, spec, metric));
    write_text_file(opt.out_dir / "correlations.tsv", correlations_tsv(ds));
    RunManifest manifest;
    manifest.command = "regress";
    manifest.config["distances"] = opt.distances.string();
    manifest.config["indicators"] = opt.indicators.string();
    manifest.config["model_spec"] = model_spec_name(spec);
    manifest.config["metric"] = metric_name(metric);
    manifest.config["rows_dropped"] = std::to_string(ds.dropped.size());
    manifest.write(opt.out_dir);

    out << regression_panel(res, spec, metric);
    if (!ds.dropped.empty()) {
        out << "note: " << ds.dropped.size() << " societies dropped for missing indicators\n";
    }
}

// ---------------------------------------------------------------- konfound

struct KonfoundOptions {
    fs::path regression;
    std::string predictor;
    std::optional<double> coeff;
    std::optional<double> std_error;
    std::optional<int> n;
    std::optional<int> k;
    double alpha = 0.05;
};

inline SensitivityEntry konfound_entry(const KonfoundOptions& opt) {
    if (opt.coeff && opt.std_error && opt.n && opt.k) {
        SensitivityEntry e = itcv(*opt.coeff, *opt.std_error, *opt.n, *opt.k, opt.alpha);
        e.predictor = opt.predictor.empty() ? "(published)" : opt.predictor;
        return e;
    }
    require_file(opt.regression, "regression file");
    if (opt.predictor.empty())
        throw ConfigError("--predictor required when reading a regression export");
    const RegressionFileData data = load_regression_tsv(opt.regression);
    const std::string wanted = to_lower(opt.predictor);
    for (const auto& p : data.result.predictors) {
        std::string name = to_lower(p.name);
        if (name == wanted || (wanted == "gci" && name == "global comp. index")) {
            SensitivityEntry e =
                itcv(p.coeff, p.std_error, data.result.n, data.result.k, opt.alpha);
            e.predictor = p.name;
            return e;
        }
    }
    throw DataError("predictor '" + opt.predictor + "' not present in " +
                    opt.regression.string());
}

inline void cmd_konfound(const fs::path&, const KonfoundOptions& opt, std::ostream& out) {
    const SensitivityEntry e = konfound_entry(opt);
    out << sensitivity_report({e});
}

// ---------------------------------------------------------------- report

struct ReportOptions {
    fs::path replay;
    std::string replay_run;
    std::string locale = "en";
    int repeats = 25;
    std::string run_id;
    fs::path key;
    fs::path indicators;  // optional; regression runs only when usable
    std::string model_spec = "A";
    std::string metric = "euclidean";
    fs::path out_dir;
};

/// Full offline pipeline over a replay transcript: item statistics, profile,
/// distance rankings, regression and sensitivity (when indicators allow),
/// consolidated into a Markdown report plus machine-readable files.
inline void cmd_report(const fs::path& data_dir, const ReportOptions& opt, std::ostream& out) {
    require_file(opt.replay, "replay transcript");
    const fs::path key_path = opt.key.empty() ? data_dir / "scoring_key.tsv" : opt.key;
    require_file(key_path, "scoring key file");
    ensure_dir(opt.out_dir);

    RunManifest manifest;
    manifest.command = "report";
    manifest.config["data_dir"] = data_dir.string();
    manifest.config["scoring_key"] = key_path.string();
    manifest.config["metric"] = opt.metric;
    manifest.config["model_spec"] = opt.model_spec;

    // 1. survey over the replay transcript
    SurveyOptions survey_opt;
    survey_opt.locale = opt.locale;
    survey_opt.repeats = opt.repeats;
    survey_opt.run_id = opt.run_id;
    survey_opt.replay = opt.replay;
    survey_opt.replay_run = opt.replay_run;
    survey_opt.out_dir = opt.out_dir;
    const SurveyCatalog catalog = SurveyCatalog::load(data_dir);
    const SurveyRun run = run_survey_command(data_dir, survey_opt, manifest);
    const std::string stats_table = item_stats_table(run, catalog);
    write_text_file(opt.out_dir / "item_stats.tsv", stats_table);

    // 2. score with the frozen key
    const ScoringKey key = ScoringKey::load(key_path);
    const DimensionProfile profile = score(run.item_means, key);
    write_text_file(opt.out_dir / "profile.csv", profile_csv(profile));
    write_text_file(opt.out_dir / "radar.svg",
                    radar_svg(profile, "Dimension profile: " + run.run_id));

    // 3. distances against the reference societies
    const DistanceMetric metric = parse_metric(opt.metric);
    const ReferenceData ref = ReferenceData::load(data_dir);
    const auto distance_rows = rank_table(profile, ref.societies, metric);
    write_text_file(opt.out_dir / "distances.tsv", distances_tsv(distance_rows));

    // 4+5. regression and sensitivity, when indicators are usable
    std::string regression_section;
    std::string sensitivity_section;
    if (opt.indicators.empty()) {
        regression_section = "Not computed: no indicators file supplied (--indicators).\n";
        sensitivity_section = "Not computed: regression unavailable.\n";
    } else {
        require_file(opt.indicators, "indicators file");
        manifest.config["indicators"] = opt.indicators.string();
        const DsvTable indicators = read_csv(opt.indicators);
        const ModelSpec spec = parse_model_spec(opt.model_spec);
        const RegressionDataset ds = assemble_dataset(distance_rows, indicators, spec, metric);
        if (ds.n() <= ds.k() + 1) {
            regression_section =
                "Not computed: only " + std::to_string(ds.n()) + " complete rows for " +
                std::to_string(ds.k()) + " predictors (" + std::to_string(ds.dropped.size()) +
                " societies lack indicator values; fill in the indicators file).\n";
            sensitivity_section = "Not computed: regression unavailable.\n";
        } else {
            const RegressionResult res = fit_dataset(ds);
            write_text_file(opt.out_dir / "regression.tsv", regression_tsv(res, spec, metric));
            regression_section = regression_panel(res, spec, metric);
            std::vector<SensitivityEntry> entries;
            for (const auto& p : res.predictors) {
                SensitivityEntry e = itcv(p.coeff, p.std_error, res.n, res.k);
                e.predictor = p.name;
                entries.push_back(std::move(e));
            }
            const std::string sens = sensitivity_report(entries);
            write_text_file(opt.out_dir / "sensitivity.tsv", sens);
            sensitivity_section = sens;
        }
    }

    // consolidated Markdown
    std::ostringstream md;
    md << "# Survey report: " << run.run_id << "\n\n";
    md << "Locale " << locale_code(run.plan.locale) << ", " << run.plan.repeats
       << " repeats per item, ranked by " << metric_name(metric) << ".\n\n";
    md << "## 1. Item statistics\n\n([item_stats.tsv](item_stats.tsv))\n\n```\n"
       << stats_table << "```\n\n";
    md << "## 2. Dimension profile\n\n([profile.csv](profile.csv), radar chart: "
          "[radar.svg](radar.svg))\n\n```\n"
       << radar_points(profile) << "```\n\n";
    for (Dimension d : key.unresolved_dimensions())
        md << "**WARNING:** the scoring key for " << dimension_name(d)
           << " is unresolved (best residual "
           << format_fixed(key.status(d).residual_primary, 3)
           << "); treat this dimension's scores with caution.\n\n";
    md << "## 3. Cultural distances\n\n([distances.tsv](distances.tsv))\n\n```\n"
       << distances_pretty(distance_rows) << "```\n\n";
    md << "## 4. Regression\n\n";
    if (fs::exists(opt.out_dir / "regression.tsv"))
        md << "([regression.tsv](regression.tsv))\n\n";
    md << "```\n" << regression_section << "```\n\n";
    md << "## 5. Sensitivity\n\n";
    if (fs::exists(opt.out_dir / "sensitivity.tsv"))
        md << "([sensitivity.tsv](sensitivity.tsv))\n\n";
    md << "```\n" << sensitivity_section << "```\n";
    write_text_file(opt.out_dir / "report.md", md.str());
    manifest.write(opt.out_dir);

    out << "report written to " << (opt.out_dir / "report.md").string() << "\n";
}

// ---------------------------------------------------------------- recover-key

struct RecoverKeyOptions {
    fs::path stats;     // defaults to <data_dir>/reference_item_stats.csv
    fs::path profiles;  // defaults to <data_dir>/llm_profiles.csv
    double tol = 0.005;
    fs::path out;  // when set, the frozen key file is written here
};

inline void cmd_recover_key(const fs::path& data_dir, const RecoverKeyOptions& opt,
                            std::ostream& out) {
    const fs::path stats_path =
        opt.stats.empty() ? data_dir / "reference_item_stats.csv" : opt.stats;
    const fs::path profiles_path =
        opt.profiles.empty() ? data_dir / "llm_profiles.csv" : opt.profiles;
    require_file(stats_path, "reference stats file");
    require_file(profiles_path, "reference profiles file");

    const ItemMeans primary = load_item_means(stats_path, "chatgpt", "EN");
    const ItemMeans secondary = load_item_means(stats_path, "bard", "EN");

    const DsvTable p = read_csv(profiles_path);
    DimensionProfile target_primary, target_secondary;
    bool saw_primary = false, saw_secondary = false;
    for (const auto& row : p.rows) {
        if (row[p.col("locale")] != "EN") continue;
        DimensionProfile prof;
        for (size_t d = 0; d < kDimensionCount; ++d)
            prof.values[d] = parse_double(row[p.col(kDimensionAbbrev[d])], kDimensionAbbrev[d]);
        if (row[p.col("model")] == "chatgpt") {
            target_primary = prof;
            saw_primary = true;
        } else if (row[p.col("model")] == "bard") {
            target_secondary = prof;
            saw_secondary = true;
        }
    }
    if (!saw_primary || !saw_secondary)
        throw DataError(profiles_path.string() + ": need chatgpt and bard EN profiles");

    const ScoringKey key = freeze_key(primary, target_primary, secondary, target_secondary,
                                      default_candidates(), opt.tol);
    out << "dimension\titems\tresidual_primary\tresidual_secondary\tstatus\n";
    for (Dimension d : kDimensions) {
        out << dimension_abbrev(d) << '\t';
        bool first = true;
        for (const KeyEntry& e : key.entries(d)) {
            if (!first) out << ',';
            out << e.item_id << (e.reversed ? "r" : "");
            first = false;
        }
        const auto& st = key.status(d);
        out << '\t' << format_fixed(st.residual_primary, 5) << '\t'
            << format_fixed(st.residual_secondary, 5) << '\t'
            << (st.resolved ? "resolved" : "unresolved") << '\n';
    }
    if (!opt.out.empty()) {
        key.save(opt.out);
        out << "key written to " << opt.out.string() << '\n';
    }
}

}  // namespace globeprobe::cli
