// Command-line entry point: administer the questionnaire to a chat LLM,
// score the nine dimensions, rank cultural distances and run the regression
// and sensitivity analyses, all from flat files.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "globeprobe/cli.hpp"
#include "globeprobe/version.hpp"

namespace {

#ifndef GLOBEPROBE_DEFAULT_DATA_DIR
#define GLOBEPROBE_DEFAULT_DATA_DIR "data"
#endif

// Exit codes: 0 success, 2 usage/config, 3 transport, 4 data/validation.
int guarded(const std::function<void()>& fn) {
    try {
        fn();
        return 0;
    } catch (const globeprobe::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const globeprobe::TransportError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const globeprobe::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace globeprobe;

    CLI::App app{"GLOBE questionnaire toolkit for chat LLMs"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    std::string data_dir = GLOBEPROBE_DEFAULT_DATA_DIR;
    app.add_option("--data-dir", data_dir, "directory holding the shipped data files");

    // catalog
    cli::CatalogOptions catalog_opt;
    auto* catalog_cmd = app.add_subcommand("catalog", "print the 39 prompts of a locale");
    catalog_cmd->add_option("--locale", catalog_opt.locale, "EN or FR")->required();

    // survey
    cli::SurveyOptions survey_opt;
    auto* survey_cmd =
        app.add_subcommand("survey", "administer the questionnaire and aggregate item statistics");
    survey_cmd->add_option("--locale", survey_opt.locale, "EN or FR");
    survey_cmd->add_option("--repeats", survey_opt.repeats, "independent runs per item")
        ->default_val(25);
    survey_cmd->add_option("--run-id", survey_opt.run_id, "run identifier");
    survey_cmd->add_option("--out", survey_opt.out_dir, "output directory")->required();
    survey_cmd->add_option("--replay", survey_opt.replay, "replay a recorded transcript");
    survey_cmd->add_option("--replay-run", survey_opt.replay_run,
                           "run id inside the replay transcript");
    survey_cmd->add_option("--scripted-reply", survey_opt.scripted_reply,
                           "fixed reply text (dry-run provider)");
    survey_cmd->add_option("--endpoint", survey_opt.endpoint,
                           "chat-completions URL of a live endpoint");
    survey_cmd->add_option("--model", survey_opt.model, "model name for the live endpoint");
    survey_cmd->add_option("--auth-env", survey_opt.auth_env,
                           "environment variable holding the API token");
    double temperature = -1.0;
    auto* temp_opt = survey_cmd->add_option("--temperature", temperature,
                                            "sampling temperature passed to the endpoint");
    survey_cmd->add_option("--max-retries", survey_opt.max_retries,
                           "transport retries per request");
    survey_cmd->add_option("--rpm", survey_opt.rpm, "requests-per-minute cap");
    survey_cmd->add_option("--transcript", survey_opt.transcript,
                           "transcript capture path (live mode; supports resume)");

    // score
    cli::ScoreOptions score_opt;
    auto* score_cmd = app.add_subcommand("score", "score nine dimensions from item statistics");
    score_cmd->add_option("--item-stats", score_opt.item_stats, "item statistics table")
        ->required();
    score_cmd->add_option("--model", score_opt.model_filter,
                          "model filter when the table holds several");
    score_cmd->add_option("--locale", score_opt.locale_filter, "locale filter");
    score_cmd->add_option("--key", score_opt.key, "scoring key file");
    score_cmd->add_option("--out", score_opt.out_dir, "output directory")->required();

    // distances
    cli::DistancesOptions dist_opt;
    auto* dist_cmd =
        app.add_subcommand("distances", "rank the reference societies by cultural difference");
    dist_cmd->add_option("--profile", dist_opt.profile, "profile.csv produced by score");
    dist_cmd->add_option("--model", dist_opt.model, "embedded reference profile: chatgpt|bard");
    dist_cmd->add_option("--locale", dist_opt.locale, "locale of the embedded profile");
    dist_cmd->add_option("--metric", dist_opt.metric, "euclidean or cosine");
    dist_cmd->add_option("--out", dist_opt.out_dir, "output directory")->required();

    // regress
    cli::RegressOptions regress_opt;
    auto* regress_cmd =
        app.add_subcommand("regress", "fit the institutional-factors regression");
    regress_cmd->add_option("--distances", regress_opt.distances, "distances.tsv")->required();
    regress_cmd->add_option("--indicators", regress_opt.indicators, "country indicators CSV")
        ->required();
    regress_cmd->add_option("--model-spec", regress_opt.model_spec, "A, B or C");
    regress_cmd->add_option("--metric", regress_opt.metric, "euclidean or cosine");
    regress_cmd->add_option("--out", regress_opt.out_dir, "output directory")->required();

    // konfound
    cli::KonfoundOptions konfound_opt;
    auto* konfound_cmd =
        app.add_subcommand("konfound", "sensitivity of one coefficient to confounding");
    konfound_cmd->add_option("--regression", konfound_opt.regression,
                             "regression.tsv produced by regress");
    konfound_cmd->add_option("--predictor", konfound_opt.predictor, "predictor name");
    double coeff = 0.0, std_error = 0.0;
    int n_obs = 0, k_pred = 0;
    auto* coeff_opt = konfound_cmd->add_option("--coeff", coeff, "published coefficient");
    auto* se_opt = konfound_cmd->add_option("--se", std_error, "published standard error");
    auto* n_opt = konfound_cmd->add_option("--n", n_obs, "observations");
    auto* k_opt = konfound_cmd->add_option("--k", k_pred, "predictor count");
    konfound_cmd->add_option("--alpha", konfound_opt.alpha, "significance level");

    // report
    cli::ReportOptions report_opt;
    auto* report_cmd =
        app.add_subcommand("report", "full offline pipeline over a replay transcript");
    report_cmd->add_option("--replay", report_opt.replay, "replay transcript")->required();
    report_cmd->add_option("--replay-run", report_opt.replay_run, "run id in the transcript");
    report_cmd->add_option("--locale", report_opt.locale, "EN or FR");
    report_cmd->add_option("--repeats", report_opt.repeats, "repeats per item");
    report_cmd->add_option("--run-id", report_opt.run_id, "run identifier");
    report_cmd->add_option("--key", report_opt.key, "scoring key file");
    report_cmd->add_option("--indicators", report_opt.indicators, "country indicators CSV");
    report_cmd->add_option("--model-spec", report_opt.model_spec, "A, B or C");
    report_cmd->add_option("--metric", report_opt.metric, "euclidean or cosine");
    report_cmd->add_option("--out", report_opt.out_dir, "output directory")->required();

    // recover-key
    cli::RecoverKeyOptions recover_opt;
    auto* recover_cmd = app.add_subcommand(
        "recover-key", "search the scoring key that reproduces the reference profiles");
    recover_cmd->add_option("--stats", recover_opt.stats, "reference item statistics");
    recover_cmd->add_option("--profiles", recover_opt.profiles, "reference dimension profiles");
    recover_cmd->add_option("--tol", recover_opt.tol, "resolution tolerance");
    recover_cmd->add_option("--write", recover_opt.out, "write the frozen key file here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*temp_opt) survey_opt.temperature = temperature;
    if (*coeff_opt) konfound_opt.coeff = coeff;
    if (*se_opt) konfound_opt.std_error = std_error;
    if (*n_opt) konfound_opt.n = n_obs;
    if (*k_opt) konfound_opt.k = k_pred;

    const std::filesystem::path data(data_dir);
    if (catalog_cmd->parsed())
        return guarded([&] { cli::cmd_catalog(data, catalog_opt, std::cout); });
    if (survey_cmd->parsed())
        return guarded([&] { cli::cmd_survey(data, survey_opt, std::cout); });
    if (score_cmd->parsed()) return guarded([&] { cli::cmd_score(data, score_opt, std::cout); });
    if (dist_cmd->parsed()) return guarded([&] { cli::cmd_distances(data, dist_opt, std::cout); });
    if (regress_cmd->parsed())
        return guarded([&] { cli::cmd_regress(data, regress_opt, std::cout); });
    if (konfound_cmd->parsed())
        return guarded([&] { cli::cmd_konfound(data, konfound_opt, std::cout); });
    if (report_cmd->parsed())
        return guarded([&] { cli::cmd_report(data, report_opt, std::cout); });
    if (recover_cmd->parsed())
        return guarded([&] { cli::cmd_recover_key(data, recover_opt, std::cout); });
    std::cerr << "error: no command\n";
    return 2;
}
