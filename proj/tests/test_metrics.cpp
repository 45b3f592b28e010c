#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "globeprobe/csv.hpp"
#include "globeprobe/metrics.hpp"
#include "globeprobe/reference.hpp"

using namespace globeprobe;
namespace fs = std::filesystem;

namespace {

const fs::path kData = GLOBEPROBE_DATA_DIR;

const ReferenceData& reference() {
    static ReferenceData ref = ReferenceData::load(kData);
    return ref;
}

DimensionProfile random_profile(std::mt19937& rng) {
    std::uniform_real_distribution<double> val(1.0, 7.0);
    DimensionProfile p;
    for (auto& v : p.values) v = val(rng);
    return p;
}

std::string nth_name(const std::vector<DistanceRow>& rows, size_t i) {
    return rows[i].display_name();
}

}  // namespace

TEST_CASE("reference data loads and matches the published profiles") {
    const ReferenceData& ref = reference();
    CHECK(ref.societies.size() == 62);

    const CountryProfile* finland = ref.find("Finland", "");
    REQUIRE(finland != nullptr);
    CHECK(finland->profile[Dimension::UncertaintyAvoidance] == doctest::Approx(5.016));

    const DimensionProfile& cg = ref.llm("chatgpt", Locale::EN);
    const std::array<double, 9> cg_expected{5.104, 4.168, 4.243, 4.504, 4.296,
                                            4.027, 4.781, 3.136, 3.267};
    for (size_t i = 0; i < 9; ++i) CHECK(cg.values[i] == doctest::Approx(cg_expected[i]));

    const DimensionProfile& bd = ref.llm("bard", Locale::EN);
    const std::array<double, 9> bd_expected{4.302, 4.288, 4.367, 4.458, 4.100,
                                            4.583, 4.479, 3.600, 4.042};
    for (size_t i = 0; i < 9; ++i) CHECK(bd.values[i] == doctest::Approx(bd_expected[i]));

    CHECK(ref.llm("chatgpt", Locale::FR)[Dimension::GenderEgalitarianism] ==
          doctest::Approx(4.040));
    CHECK(ref.llm("bard", Locale::FR)[Dimension::UncertaintyAvoidance] == doctest::Approx(3.500));
    CHECK_THROWS_AS(reference().llm("nope", Locale::EN), DataError);
}

TEST_CASE("the checksum guards the reference scores") {
    const auto dir = fs::temp_directory_path() / "globeprobe_refdata_corrupt";
    fs::create_directories(dir);
    std::string bytes = read_file(kData / "globe_societies.csv");
    bytes[bytes.size() / 2] = bytes[bytes.size() / 2] == '4' ? '5' : '4';
    {
        std::ofstream f(dir / "globe_societies.csv", std::ios::binary);
        f << bytes;
    }
    fs::copy_file(kData / "llm_profiles.csv", dir / "llm_profiles.csv",
                  fs::copy_options::overwrite_existing);
    CHECK_THROWS_AS(ReferenceData::load(dir), DataError);
    fs::remove_all(dir);
}

TEST_CASE("euclidean distances match the published values") {
    const DimensionProfile& cg = reference().llm("chatgpt", Locale::EN);
    const DimensionProfile& bd = reference().llm("bard", Locale::EN);
    CHECK(euclidean(cg, reference().find("Finland", "")->profile) ==
          doctest::Approx(1.205).epsilon(0.005 / 1.205));
    CHECK(euclidean(cg, bd) == doctest::Approx(1.389).epsilon(0.005 / 1.389));
    CHECK(euclidean(cg, cg) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("cosine similarities match the published values") {
    const DimensionProfile& cg = reference().llm("chatgpt", Locale::EN);
    const DimensionProfile& bd = reference().llm("bard", Locale::EN);
    CHECK(cosine(cg, bd) == doctest::Approx(0.994).epsilon(0.001 / 0.994));
    CHECK(cosine(cg, cg) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine(cg, reference().find("Hungary", "")->profile) ==
          doctest::Approx(0.961).epsilon(0.001 / 0.961));

    DimensionProfile zero;
    zero.values.fill(0.0);
    CHECK_THROWS_AS(cosine(cg, zero), DomainError);
}

TEST_CASE("every published distance row is reproduced") {
    const DsvTable t = read_csv(fs::path(GLOBEPROBE_TEST_DATA_DIR) / "supplement_distances.csv");
    const DimensionProfile& cg = reference().llm("chatgpt", Locale::EN);
    const DimensionProfile& bd = reference().llm("bard", Locale::EN);
    REQUIRE(t.rows.size() == 62);
    int checks = 0;
    for (const auto& row : t.rows) {
        const CountryProfile* s =
            reference().find(row[t.col("society_name")], row[t.col("qualifier")]);
        REQUIRE(s != nullptr);
        CHECK(std::fabs(euclidean(cg, s->profile) -
                        parse_double(row[t.col("chatgpt_euclidean")], "e")) <= 0.005);
        CHECK(std::fabs(cosine(cg, s->profile) -
                        parse_double(row[t.col("chatgpt_cosine")], "c")) <= 0.001);
        CHECK(std::fabs(euclidean(bd, s->profile) -
                        parse_double(row[t.col("bard_euclidean")], "e")) <= 0.005);
        CHECK(std::fabs(cosine(bd, s->profile) -
                        parse_double(row[t.col("bard_cosine")], "c")) <= 0.001);
        checks += 4;
    }
    CHECK(checks == 248);
}

TEST_CASE("euclidean rankings reproduce the published order") {
    const auto cg_rows = rank_table(reference().llm("chatgpt", Locale::EN),
                                    reference().societies, DistanceMetric::Euclidean);
    REQUIRE(cg_rows.size() == 62);
    CHECK(nth_name(cg_rows, 0) == "Finland");
    CHECK(nth_name(cg_rows, 1) == "Switzerland (French speaking)");
    CHECK(nth_name(cg_rows, 2) == "Canada (English speaking)");
    CHECK(nth_name(cg_rows, 3) == "China");
    CHECK(nth_name(cg_rows, 4) == "Australia");
    CHECK(cg_rows[0].euclidean == doctest::Approx(1.205).epsilon(0.005 / 1.205));

    // farthest five, nearest-last order
    CHECK(nth_name(cg_rows, 61) == "Hungary");
    CHECK(cg_rows[61].euclidean == doctest::Approx(3.493).epsilon(0.005 / 3.493));
    CHECK(nth_name(cg_rows, 60) == "Russia");
    CHECK(nth_name(cg_rows, 59) == "Greece");
    CHECK(nth_name(cg_rows, 58) == "Morocco");
    CHECK(nth_name(cg_rows, 57) == "Guatemala");

    const auto bd_rows = rank_table(reference().llm("bard", Locale::EN), reference().societies,
                                    DistanceMetric::Euclidean);
    CHECK(nth_name(bd_rows, 0) == "Australia");
    CHECK(bd_rows[0].euclidean == doctest::Approx(0.696).epsilon(0.005 / 0.696));
    CHECK(nth_name(bd_rows, 1) == "Canada (English speaking)");
    CHECK(nth_name(bd_rows, 2) == "USA");
    CHECK(nth_name(bd_rows, 3) == "South Africa (Black sample)");
    CHECK(nth_name(bd_rows, 4) == "Israel");
    CHECK(nth_name(bd_rows, 61) == "Russia");
    CHECK(nth_name(bd_rows, 60) == "Hungary");
}

TEST_CASE("cosine rankings differ from the euclidean ones as published") {
    const auto cg_rows = rank_table(reference().llm("chatgpt", Locale::EN),
                                    reference().societies, DistanceMetric::Cosine);
    CHECK(nth_name(cg_rows, 0) == "Malaysia");
    CHECK(nth_name(cg_rows, 1) == "Finland");
    CHECK(nth_name(cg_rows, 2) == "China");
    CHECK(nth_name(cg_rows, 3) == "Switzerland (French speaking)");
    CHECK(nth_name(cg_rows, 4) == "Canada (English speaking)");
    // descending similarity
    for (size_t i = 1; i < cg_rows.size(); ++i) CHECK(cg_rows[i - 1].cosine >= cg_rows[i].cosine);

    const auto bd_rows = rank_table(reference().llm("bard", Locale::EN), reference().societies,
                                    DistanceMetric::Cosine);
    CHECK(nth_name(bd_rows, 0) == "Canada (English speaking)");
    CHECK(nth_name(bd_rows, 1) == "Australia");
    CHECK(nth_name(bd_rows, 2) == "South Africa (Black sample)");
    CHECK(nth_name(bd_rows, 3) == "USA");
    CHECK(nth_name(bd_rows, 4) == "Israel");
}

TEST_CASE("metric axioms hold on random profiles") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const DimensionProfile a = random_profile(rng);
        const DimensionProfile b = random_profile(rng);
        const DimensionProfile c = random_profile(rng);
        CHECK(euclidean(a, b) == doctest::Approx(euclidean(b, a)).epsilon(1e-14));
        CHECK(euclidean(a, a) == 0.0);
        CHECK(euclidean(a, b) >= 0.0);
        CHECK(euclidean(a, c) <= euclidean(a, b) + euclidean(b, c) + 1e-12);
        if (i < 100) {
            DimensionProfile nudged = a;
            nudged.values[i % 9] += 1e-6;
            CHECK(euclidean(a, nudged) > 0.0);
        }
    }
}

TEST_CASE("cosine is scale invariant") {
    std::mt19937 rng(515);
    std::uniform_real_distribution<double> alpha(1e-6, 10.0);
    for (int i = 0; i < 500; ++i) {
        const DimensionProfile a = random_profile(rng);
        const DimensionProfile b = random_profile(rng);
        DimensionProfile scaled = a;
        const double s = alpha(rng);
        for (auto& v : scaled.values) v *= s;
        CHECK(std::fabs(cosine(scaled, b) - cosine(a, b)) < 1e-12);
    }
}
