#include <doctest.h>

#include <random>
#include <sstream>

#include "recqed/error.hpp"
#include "recqed/ion_catalog.hpp"

using namespace recqed;

namespace {

Catalog parse(const std::string& text) {
    std::istringstream in(text);
    return parse_catalog(in, "test");
}

const char* kRecord = R"(id = Test:Host A-B
wavelength_nm = 600
oscillator_strength = 1e-7
T1_us = 100
T2_us = 150
T2_field = 10G
host_index = 1.8
)";

}  // namespace

TEST_CASE("bundled catalog loads all eight transitions") {
    const Catalog cat = load_catalog(RECQED_TEST_CATALOG);
    CHECK(cat.size() == 8);
    for (const IonTransition& t : cat) CHECK_NOTHROW(validate(t));

    const IonTransition& er = get_transition(cat, "Er3+:Y2SiO5 4I15/2-4I13/2");
    CHECK(er.wavelength_vac == doctest::Approx(1536.14e-9).epsilon(1e-12));
    CHECK(er.T1 == doctest::Approx(11.4e-3).epsilon(1e-12));
    CHECK(er.T2 == doctest::Approx(4.08e-3).epsilon(1e-12));
    CHECK(er.oscillator_strength == doctest::Approx(2e-7));
    CHECK(er.T2_field_note == "70kG");

    const IonTransition& pr = get_transition(cat, "Pr3+:Y2SiO5 3H4-1D2");
    CHECK(pr.wavelength_vac == doctest::Approx(605.977e-9).epsilon(1e-12));
    CHECK(pr.T2_field_note == "77G");
    CHECK(pr.host_index == 1.8);
}

TEST_CASE("default path honours RECQED_CATALOG") {
    CHECK(default_catalog_path() == std::filesystem::path(RECQED_TEST_CATALOG));
}

TEST_CASE("empty input yields an empty catalog") {
    CHECK(parse("").empty());
    CHECK(parse("# only a comment\n\n").empty());
}

TEST_CASE("T2 above twice T1 is rejected") {
    std::string text = kRecord;
    text.replace(text.find("T2_us = 150"), 11, "T2_us = 300");
    try {
        parse(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("T2 \xE2\x89\xA4 2\xC2\xB7T1") != std::string::npos);
    }
}

TEST_CASE("malformed records are reported") {
    CHECK_THROWS_AS(parse(std::string(kRecord) + "colour = red\n"), ParseError);
    CHECK_THROWS_AS(parse(std::string(kRecord) + "T1_us = 5\n"), ParseError);
    CHECK_THROWS_AS(parse(std::string(kRecord) + "\n" + kRecord), Error);
    CHECK_THROWS_AS(parse("id = x\nwavelength_nm = 600\n"), ParseError);
    CHECK_THROWS_AS(parse("id = x\nwavelength_nm = abc\n"), ParseError);

    std::string negative = kRecord;
    negative.replace(negative.find("= 1e-7"), 6, "= -1e-7");
    CHECK_THROWS_AS(parse(negative), ValidationError);
    CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.txt"), Error);
}

TEST_CASE("unknown id lists the available ones") {
    const Catalog cat = parse(kRecord);
    try {
        get_transition(cat, "Nope");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("Test:Host A-B") != std::string::npos);
    }
}

TEST_CASE("SI keys are accepted") {
    const Catalog cat = parse(
        "id = si\nwavelength_m = 6e-7\noscillator_strength = 1e-7\nT1_s = 1e-4\n"
        "T2_s = 1.5e-4\nT2_field = x\nhost_index = 1.8\n");
    REQUIRE(cat.size() == 1);
    CHECK(cat[0].wavelength_vac == 6e-7);
    CHECK(cat[0].T1 == 1e-4);
}

TEST_CASE("serialization round-trips exactly") {
    const Catalog bundled = load_catalog(RECQED_TEST_CATALOG);
    CHECK(parse(serialize_catalog(bundled)) == bundled);

    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Catalog cat;
        const int n = 1 + trial % 5;
        for (int i = 0; i < n; ++i) {
            IonTransition t;
            t.id = "ion" + std::to_string(trial) + "_" + std::to_string(i);
            t.wavelength_vac = 300e-9 + 2000e-9 * u(rng);
            t.oscillator_strength = std::pow(10.0, -9.0 + 4.0 * u(rng));
            t.T1 = std::pow(10.0, -6.0 + 4.0 * u(rng));
            t.T2 = 2.0 * t.T1 * u(rng) + 1e-12;
            t.T2_field_note = i % 2 ? "zero field" : "";
            t.host_index = 1.3 + u(rng);
            cat.push_back(t);
        }
        const Catalog back = parse(serialize_catalog(cat));
        REQUIRE(back == cat);
    }
}
