#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "globeprobe/catalog.hpp"

using namespace globeprobe;

namespace {
const SurveyCatalog& catalog() {
    static SurveyCatalog cat = SurveyCatalog::load(GLOBEPROBE_DATA_DIR);
    return cat;
}
}  // namespace

TEST_CASE("both locales hold exactly 39 items in id order") {
    for (Locale loc : {Locale::EN, Locale::FR}) {
        const auto& items = catalog().items(loc);
        REQUIRE(items.size() == 39);
        for (int k = 1; k <= 39; ++k) CHECK(items[static_cast<size_t>(k - 1)].item_id == k);
    }
    CHECK(catalog().items(Locale::EN)[0].topic == "Orderliness vs. innovation");
}

TEST_CASE("prompt text matches the published wording") {
    const std::string& p1 = catalog().render_prompt(1, Locale::EN);
    CHECK(p1.find("orderliness and consistency are stressed, even at the expense of "
                  "experimentation and innovation") != std::string::npos);
    const std::string& p7 = catalog().render_prompt(7, Locale::EN);
    CHECK(p7.find("leaders encourage group loyalty even if individual goals suffer") !=
          std::string::npos);
    CHECK(catalog().render_prompt(38, Locale::FR).find("Je vais vous poser une question") !=
          std::string::npos);
}

TEST_CASE("rendering is pure") {
    const std::string a = catalog().render_prompt(17, Locale::FR);
    const std::string b = catalog().render_prompt(17, Locale::FR);
    CHECK(a == b);
}

TEST_CASE("out-of-range item ids are rejected") {
    CHECK_THROWS_AS(catalog().render_prompt(40, Locale::EN), UnknownItemError);
    CHECK_THROWS_AS(catalog().render_prompt(0, Locale::EN), UnknownItemError);
    CHECK_THROWS_AS(catalog().item_scale(0), UnknownItemError);
    CHECK_THROWS_AS(catalog().item_scale(40), UnknownItemError);
}

TEST_CASE("item scales") {
    const LikertScale& s1 = catalog().item_scale(1);
    CHECK(s1.min == 1);
    CHECK(s1.max == 7);
    CHECK(s1.low_anchor == "strongly agree");
    CHECK(s1.high_anchor == "strongly disagree");
    const LikertScale& s2 = catalog().item_scale(2);
    CHECK(s2.low_anchor == "aggressive");
    CHECK(s2.high_anchor == "non-aggressive");
}

TEST_CASE("catalog invariants") {
    for (Locale loc : {Locale::EN, Locale::FR}) {
        const char* prefix = loc == Locale::EN
            ? "I am interested in the norms, values, and practices in society"
            : "Je m'intéresse à ce que les normes";
        for (const auto& it : catalog().items(loc)) {
            CHECK(it.scale.min == 1);
            CHECK(it.scale.max == 7);
            CHECK_FALSE(it.scale.low_anchor.empty());
            CHECK_FALSE(it.scale.high_anchor.empty());
            CHECK(starts_with(it.prompt_text, prefix));
            // whitespace is already normalized in the shipped catalog
            CHECK(it.prompt_text == normalize_whitespace(it.prompt_text));
        }
    }
    // same item id <-> same topic and format across locales
    const auto& en = catalog().items(Locale::EN);
    const auto& fr = catalog().items(Locale::FR);
    for (size_t i = 0; i < en.size(); ++i) {
        CHECK(en[i].topic == fr[i].topic);
        CHECK(en[i].format == fr[i].format);
    }
    // every agreement statement uses the agree/disagree anchors in English
    for (const auto& it : en) {
        if (it.format == SurveyItem::Format::AgreementStatement) {
            CHECK(it.scale.low_anchor == "strongly agree");
            CHECK(it.scale.high_anchor == "strongly disagree");
        }
    }
}

TEST_CASE("locale parsing") {
    CHECK(parse_locale("en") == Locale::EN);
    CHECK(parse_locale("EN") == Locale::EN);
    CHECK(parse_locale("fr") == Locale::FR);
    CHECK_THROWS_AS(parse_locale("de"), UnsupportedLocaleError);
}
