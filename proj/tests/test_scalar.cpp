#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ratla/scalar.hpp"

using namespace ratla;

TEST_CASE("decimal and fraction literals parse exactly", "[scalar]") {
    CHECK(parse_scalar("10.1") == Scalar(BigInt(101), BigInt(10)));
    CHECK(parse_scalar("10.1").to_string() == "101/10");
    CHECK(parse_scalar("2/3").to_string() == "2/3");
    CHECK(parse_scalar("-0.5") == Scalar(BigInt(-1), BigInt(2)));
    CHECK(parse_scalar("+7") == Scalar(7));
    CHECK(parse_scalar("0.08").to_string() == "2/25");
    CHECK(parse_scalar("-6/4").to_string() == "-3/2");
    CHECK(parse_scalar(" 12 ").to_string() == "12");
    CHECK(parse_scalar("987.5").to_string() == "1975/2");
}

TEST_CASE("malformed literals are rejected", "[scalar]") {
    for (const char* bad : {"", "-", "1.", ".5", "1..2", "1/2/3", "a", "1e5", "3/-4", "1/", "/2", "--1"}) {
        INFO(bad);
        CHECK_THROWS_AS(parse_scalar(bad), parse_error);
    }
    CHECK_THROWS_AS(parse_scalar("3/0"), division_by_zero);
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), division_by_zero);
    CHECK_THROWS_AS(Scalar(0).reciprocal(), division_by_zero);
}

TEST_CASE("scalars are stored reduced with a positive denominator", "[scalar]") {
    Scalar a(BigInt(6), BigInt(-4));
    CHECK(a.numerator() == -3);
    CHECK(a.denominator() == 2);
    Scalar z = parse_scalar("0/7");
    CHECK(z.numerator() == 0);
    CHECK(z.denominator() == 1);
    CHECK((Scalar(1) / 3 - Scalar(1) / 3).denominator() == 1);
}

TEST_CASE("decimal rendering rounds half to even", "[scalar]") {
    CHECK(parse_scalar("2.675").to_decimal(2) == "2.68");
    CHECK(parse_scalar("2.665").to_decimal(2) == "2.66");
    CHECK(parse_scalar("0.5").to_decimal(0) == "0");
    CHECK(parse_scalar("1.5").to_decimal(0) == "2");
    CHECK(parse_scalar("-1/3").to_decimal(3) == "-0.333");
    CHECK(parse_scalar("-0.001").to_decimal(2) == "0.00");
    CHECK(parse_scalar("24500/3").to_decimal(2) == "8166.67");
    CHECK(Scalar(1500).to_decimal(2) == "1500.00");
}

TEST_CASE("from_double is exact", "[scalar]") {
    CHECK(Scalar::from_double(0.5).to_string() == "1/2");
    CHECK(Scalar::from_double(-3.0).to_string() == "-3");
    CHECK(Scalar::from_double(0.1).to_double() == 0.1);
    CHECK(Scalar::from_double(0.0).is_zero());
    CHECK(Scalar::from_double(1e300).to_double() == 1e300);
}

TEST_CASE("field axioms hold on random rationals", "[scalar][property]") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        Scalar a = oracle::random_scalar(rng, 50, 20);
        Scalar b = oracle::random_scalar(rng, 50, 20);
        Scalar c = oracle::random_scalar(rng, 50, 20);
        REQUIRE(a + (-a) == Scalar(0));
        if (!a.is_zero()) {
            REQUIRE(a * a.reciprocal() == Scalar(1));
        }
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(parse_scalar(a.to_string()) == a);
    }
}
