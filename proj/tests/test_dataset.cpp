#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "globeprobe/indicators.hpp"
#include "globeprobe/ols.hpp"
#include "globeprobe/reference.hpp"

using namespace globeprobe;

namespace {

std::vector<DistanceRow> synthetic_distances() {
    return {
        {"Atlantis", "", 1.0, 0.99},
        {"Atlantis", "North sample", 2.0, 0.98},
        {"Borduria", "", 3.0, 0.97},
        {"Cobia", "", 4.0, 0.96},
    };
}

DsvTable synthetic_indicators() {
    DsvTable t;
    t.header = {"society_name", "qualifier", "gci",
                "english",      "german",    "spanish",
                "russian",      "portuguese", "french",
                "dutch",        "italian",   "chinese",
                "arabic",       "linguistic_fractionalization", "population",
                "gdp",          "internet_usage"};
    auto row = [](std::string name, std::string qual, std::string gci, std::string english,
                  std::string frac, std::string pop, std::string gdp, std::string internet) {
        return std::vector<std::string>{std::move(name), std::move(qual), std::move(gci),
                                        std::move(english), "0", "0", "0", "0", "0", "0", "0",
                                        "0", "0", std::move(frac), std::move(pop),
                                        std::move(gdp), std::move(internet)};
    };
    t.rows.push_back(row("Atlantis", "", "70.5", "1", "0.2", "1000000", "2.5e9", "88"));
    t.rows.push_back(row("Atlantis", "North sample", "70.5", "1", "0.2", "1000000", "2.5e9", "88"));
    t.rows.push_back(row("Borduria", "", "55.0", "0", "0.6", "5000000", "9.9e8", "61"));
    t.rows.push_back(row("Cobia", "", "", "0", "0.4", "250000", "1.1e8", "45"));  // gci missing
    return t;
}

}  // namespace

TEST_CASE("model A assembly joins, drops incomplete rows and counts them") {
    const auto ds = assemble_dataset(synthetic_distances(), synthetic_indicators(), ModelSpec::A,
                                     DistanceMetric::Euclidean);
    CHECK(ds.n() == 3);  // Cobia lacks the index value
    CHECK(ds.k() == 11);
    REQUIRE(ds.dropped.size() == 1);
    CHECK(ds.dropped[0] == "Cobia");
    CHECK(ds.row_names[1] == "Atlantis (North sample)");
    CHECK(ds.y == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(ds.predictor_names[0] == "Global Comp. Index");
    CHECK(ds.predictors[0] == std::vector<double>{70.5, 70.5, 55.0});
    CHECK(ds.predictor_names[1] == "English");
    CHECK(ds.predictors[1] == std::vector<double>{1.0, 1.0, 0.0});
}

TEST_CASE("the cosine outcome flips with the metric flag") {
    const auto ds = assemble_dataset(synthetic_distances(), synthetic_indicators(), ModelSpec::A,
                                     DistanceMetric::Cosine);
    CHECK(ds.y == std::vector<double>{0.99, 0.98, 0.97});
}

TEST_CASE("model B adds the controls and logs population") {
    const auto ds = assemble_dataset(synthetic_distances(), synthetic_indicators(), ModelSpec::B,
                                     DistanceMetric::Euclidean);
    CHECK(ds.k() == 13);
    CHECK(ds.predictor_names[11] == "Linguistic fractionalization");
    CHECK(ds.predictor_names[12] == "Population size (logged)");
    CHECK(ds.predictors[12][0] == doctest::Approx(std::log(1000000.0)));
}

TEST_CASE("model C swaps the index for internet usage and logged GDP") {
    const auto ds = assemble_dataset(synthetic_distances(), synthetic_indicators(), ModelSpec::C,
                                     DistanceMetric::Euclidean);
    CHECK(ds.k() == 13);
    CHECK(ds.predictor_names[0] == "English");  // no competitiveness column in C
    CHECK(ds.predictor_names[11] == "Internet usage");
    CHECK(ds.predictor_names[12] == "GDP (logged)");
    CHECK(ds.predictors[12][2] == doctest::Approx(std::log(9.9e8)));
    // all four societies have the model C columns
    CHECK(ds.n() == 4);
}

TEST_CASE("unknown societies in the indicators are a join error") {
    auto ind = synthetic_indicators();
    auto bad = ind.rows[0];
    bad[0] = "Ruritania";
    ind.rows.push_back(bad);
    CHECK_THROWS_AS(assemble_dataset(synthetic_distances(), ind, ModelSpec::A,
                                     DistanceMetric::Euclidean),
                    JoinError);
    try {
        assemble_dataset(synthetic_distances(), ind, ModelSpec::A, DistanceMetric::Euclidean);
    } catch (const JoinError& e) {
        CHECK(std::string(e.what()).find("Ruritania") != std::string::npos);
    }
}

TEST_CASE("a missing model column is a schema error") {
    DsvTable ind = synthetic_indicators();
    ind.header[2] = "gci_renamed";
    CHECK_THROWS_AS(assemble_dataset(synthetic_distances(), ind, ModelSpec::A,
                                     DistanceMetric::Euclidean),
                    SchemaError);
}

TEST_CASE("non-binary language cells are rejected") {
    DsvTable ind = synthetic_indicators();
    ind.rows[0][3] = "2";
    CHECK_THROWS_AS(assemble_dataset(synthetic_distances(), ind, ModelSpec::A,
                                     DistanceMetric::Euclidean),
                    DataError);
}

TEST_CASE("non-positive values cannot be logged") {
    DsvTable ind = synthetic_indicators();
    ind.rows[0][14] = "0";  // population
    CHECK_THROWS_AS(assemble_dataset(synthetic_distances(), ind, ModelSpec::B,
                                     DistanceMetric::Euclidean),
                    DataError);
}

TEST_CASE("the shipped template joins cleanly but leaves the numerics blank") {
    const ReferenceData ref = ReferenceData::load(GLOBEPROBE_DATA_DIR);
    const auto distances = rank_table(ref.llm("chatgpt", Locale::EN), ref.societies,
                                      DistanceMetric::Euclidean);
    const DsvTable ind = read_csv(std::filesystem::path(GLOBEPROBE_DATA_DIR) /
                                  "indicators_template.csv");
    CHECK(ind.rows.size() == 62);
    const auto ds =
        assemble_dataset(distances, ind, ModelSpec::A, DistanceMetric::Euclidean);
    CHECK(ds.n() == 0);  // gci ships blank, every row drops
    CHECK(ds.dropped.size() == 62);
}

TEST_CASE("correlation matrix of the assembled dataset") {
    const auto ds = assemble_dataset(synthetic_distances(), synthetic_indicators(), ModelSpec::A,
                                     DistanceMetric::Euclidean);
    const auto r = correlation_matrix(ds);
    REQUIRE(r.size() == 12);  // outcome + 11 predictors
    CHECK(r[0][0] == doctest::Approx(1.0));
    // outcome {1,2,3} vs index {70.5,70.5,55}: perfectly anti-monotone pairs
    CHECK(r[0][1] < 0.0);
    CHECK(r[0][1] == doctest::Approx(r[1][0]).epsilon(1e-12));
    // the all-zero dummy columns (German onward) have no variance
    CHECK(std::isnan(r[0][3]));
}

TEST_CASE("a filled synthetic indicator set flows into the regression") {
    // enlarge the toy world so the fit has degrees of freedom
    std::vector<DistanceRow> distances;
    DsvTable ind;
    ind.header = synthetic_indicators().header;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> noise(-0.2, 0.2);
    for (int i = 0; i < 30; ++i) {
        const std::string name = "Land" + std::to_string(i);
        const double gci = 50.0 + i;
        const double english = i % 3 == 0 ? 1.0 : 0.0;
        const double dist = 5.0 - 0.04 * gci - 0.5 * english + noise(rng);
        distances.push_back({name, "", dist, 1.0 - dist / 10.0});
        std::vector<std::string> row{name, "", std::to_string(gci),
                                     english == 1.0 ? "1" : "0"};
        for (int j = 0; j < 9; ++j) row.push_back("0");
        row.insert(row.end(), {"0.3", "1000000", "1e9", "75"});
        ind.rows.push_back(row);
    }
    const auto ds = assemble_dataset(distances, ind, ModelSpec::A, DistanceMetric::Euclidean);
    CHECK(ds.n() == 30);

    // drop the all-zero dummy columns, keep index + english
    const auto res = ols({ds.predictors[0], ds.predictors[1]},
                         ds.y, {ds.predictor_names[0], ds.predictor_names[1]});
    CHECK(res.predictors[0].coeff == doctest::Approx(-0.04).epsilon(0.25));
    CHECK(res.predictors[1].coeff == doctest::Approx(-0.5).epsilon(0.25));
    CHECK(res.r_squared > 0.8);
}
