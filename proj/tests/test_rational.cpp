#include <catch2/catch_amalgamated.hpp>

#include "scallop/rational.hpp"

using namespace scallop;

TEST_CASE("rationals are canonical and exact") {
    Rat a = rat(2, 4);
    CHECK(a.get_num() == 1);
    CHECK(a.get_den() == 2);
    CHECK(rat(1, 3) + rat(1, 6) == rat(1, 2));
    CHECK(rat(-4, 6) == rat(-2, 3));
    CHECK_THROWS_AS(rat(1, 0), invalid_input);
}

TEST_CASE("string round trip uses p/q form") {
    CHECK(rat_to_string(rat(7, 1)) == "7");
    CHECK(rat_to_string(rat(-3, 9)) == "-1/3");
    CHECK(parse_rat("22/7") == rat(22, 7));
    CHECK(parse_rat("-5") == rat(-5));
    CHECK(parse_rat("6/4") == rat(3, 2));
    CHECK_THROWS_AS(parse_rat("1/0"), invalid_input);
    CHECK_THROWS_AS(parse_rat("x"), invalid_input);
    CHECK_THROWS_AS(parse_rat(""), invalid_input);
    CHECK_THROWS_AS(parse_rat("1/-2"), invalid_input);
}

TEST_CASE("floor, ceil, dyadic rounding") {
    CHECK(rat_floor(rat(7, 2)) == 3);
    CHECK(rat_floor(rat(-7, 2)) == -4);
    CHECK(rat_ceil(rat(7, 2)) == 4);
    CHECK(rat_ceil(rat(-7, 2)) == -3);
    CHECK(rat_ceil(rat(6, 2)) == 3);
    CHECK(pow2(3) == 8);
    CHECK(pow2(-2) == rat(1, 4));

    Rat x = rat(1, 3);
    Rat approx = round_to_dyadic(x, 16);
    CHECK(rat_abs(approx - x) <= pow2(-17));
    CHECK(approx.get_den() <= 65536);
}

TEST_CASE("fnv hash is stable") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("scallop") != fnv1a64_hex("scallo p"));
    CHECK(fnv1a64_hex("abc").size() == 16);
}
