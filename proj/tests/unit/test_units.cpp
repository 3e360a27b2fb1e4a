#include <doctest.h>

#include <numbers>

#include "recqed/error.hpp"
#include "recqed/units.hpp"

using namespace recqed::units;
using recqed::ParseError;

TEST_CASE("lengths") {
    CHECK(parse_length("606nm") == doctest::Approx(606e-9));
    CHECK(parse_length("0.5mm") == doctest::Approx(5e-4));
    CHECK(parse_length("50um") == doctest::Approx(5e-5));
    CHECK(parse_length("3cm") == doctest::Approx(0.03));
    CHECK(parse_length("2") == 2.0);
    CHECK_THROWS_AS(parse_length("5 furlongs"), ParseError);
    CHECK_THROWS_AS(parse_length(""), ParseError);
}

TEST_CASE("volumes and times") {
    CHECK(parse_volume("1000um3") == doctest::Approx(1e-15));
    CHECK(parse_volume("1e-15m^3") == doctest::Approx(1e-15));
    CHECK(parse_time("10us") == doctest::Approx(1e-5));
    CHECK(parse_time("3ns") == doctest::Approx(3e-9));
    CHECK(parse_time("0.25") == 0.25);
}

TEST_CASE("rates: cyclic suffixes gain 2 pi") {
    const double two_pi = 2.0 * std::numbers::pi;
    CHECK(parse_rate("1MHz") == doctest::Approx(two_pi * 1e6));
    CHECK(parse_rate("1MHz", true) == doctest::Approx(1e6));
    CHECK(parse_rate("5rad/s") == 5.0);
    CHECK(parse_rate("10") == 10.0);
    CHECK_THROWS_AS(parse_number("1e9x"), ParseError);
}
