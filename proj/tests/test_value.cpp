#include "doctest.h"

#include <random>

#include "vcsp/value.hpp"

using namespace vcsp;

TEST_CASE("rationals are exact and kept reduced")
{
    ExtValue v = ExtValue::ratio(3, 6);
    CHECK(v.numerator() == 1);
    CHECK(v.denominator() == 2);
    CHECK(v.str() == "1/2");
    CHECK(ExtValue(0).str() == "0");
    CHECK(ExtValue(0).denominator() == 1);
    CHECK(ExtValue::ratio(-4, 2).str() == "-2");
}

TEST_CASE("infinity absorbs under addition and tops the order")
{
    ExtValue inf = ExtValue::infinity();
    CHECK((inf + ExtValue(5)).is_infinite());
    CHECK((ExtValue(5) + inf).is_infinite());
    CHECK(inf == ExtValue::infinity());
    CHECK(inf > ExtValue(1000000));
    CHECK(ExtValue(-3) < ExtValue::ratio(1, 7));
    CHECK(inf.str() == "inf");
}

TEST_CASE("value token parsing")
{
    CHECK(ExtValue::parse("inf").is_infinite());
    CHECK(ExtValue::parse("3/2") == ExtValue::ratio(3, 2));
    CHECK(ExtValue::parse("-5") == ExtValue(-5));
    CHECK(ExtValue::parse("-1/2") == ExtValue::ratio(-1, 2));
    CHECK_THROWS_AS(ExtValue::parse("1/0"), Error);
    CHECK_THROWS_AS(ExtValue::parse("1/-2"), Error);
    CHECK_THROWS_AS(ExtValue::parse("x"), Error);
    CHECK_THROWS_AS(ExtValue::parse(""), Error);
    CHECK_THROWS_AS(ExtValue::parse("1.5"), Error);
}

TEST_CASE("addition is associative on random rationals")
{
    std::mt19937_64 rng(20240);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 20);
    for (int i = 0; i < 200; ++i) {
        ExtValue a = ExtValue::ratio(num(rng), den(rng));
        ExtValue b = ExtValue::ratio(num(rng), den(rng));
        ExtValue c = ExtValue::ratio(num(rng), den(rng));
        CHECK((a + b) + c == a + (b + c));
        ExtValue s = a + b;
        if (s.is_finite())
            CHECK(boost::multiprecision::gcd(boost::multiprecision::abs(s.numerator()), s.denominator()) == 1);
    }
}

TEST_CASE("rational floor rounds toward minus infinity")
{
    CHECK(rational_floor(Rational(7, 2)) == 3);
    CHECK(rational_floor(Rational(-7, 2)) == -4);
    CHECK(rational_floor(Rational(6, 3)) == 2);
    CHECK(rational_floor(Rational(-6, 3)) == -2);
    CHECK(rational_floor(Rational(0)) == 0);
}
