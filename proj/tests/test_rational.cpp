#include <catch2/catch_amalgamated.hpp>

#include <eil/rational.hpp>
#include <eil/rng.hpp>

using eil::BigInt;
using eil::Rational;

TEST_CASE("rational construction reduces to lowest terms") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(-6, -4) == Rational(3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, -7).str() == "0");
    CHECK(Rational(7).num() == 7);
    CHECK(Rational(7).den() == 1);
    CHECK(Rational(10, 15).num() == 2);
    CHECK(Rational(10, 15).den() == 3);
    CHECK_THROWS_AS(Rational(1, 0), eil::InvalidArgument);
}

TEST_CASE("rational arithmetic identities") {
    const Rational a(3, 7), b(-5, 2), c(11, 13);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == Rational(0));
    CHECK(a + (-a) == Rational(0));
    CHECK(a * a.reciprocal() == Rational(1));
    CHECK(b / b == Rational(1));
    CHECK(a / b == a * b.reciprocal());
    CHECK(-(a * b) == (-a) * b);
    CHECK_THROWS_AS(a / Rational(0), eil::InvalidArgument);
    CHECK_THROWS_AS(Rational(0).reciprocal(), eil::InvalidArgument);

    Rational acc(1, 2);
    acc += Rational(1, 3);
    CHECK(acc == Rational(5, 6));
    acc *= Rational(6, 5);
    CHECK(acc == Rational(1));
}

TEST_CASE("rational comparisons handle signs via cross-multiplication") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(-1, 2) < Rational(1, 1000000));
    CHECK(Rational(7, 3) > Rational(2));
    CHECK(Rational(2, 4) <= Rational(1, 2));
    CHECK(Rational(2, 4) >= Rational(1, 2));
    CHECK(eil::abs(Rational(-3, 4)) == Rational(3, 4));
    CHECK(Rational(-1, 2).is_negative());
    CHECK_FALSE(Rational(0).is_negative());
    CHECK(Rational(0).is_zero());
}

TEST_CASE("rational parse accepts integers, fractions and decimals") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("+5") == Rational(5));
    CHECK(Rational::parse("0.125") == Rational(1, 8));
    CHECK(Rational::parse("-0.5") == Rational(-1, 2));
    CHECK(Rational::parse("2.5e-1") == Rational(1, 4));
    CHECK(Rational::parse("1e2") == Rational(100));
    CHECK(Rational::parse("1.5E1") == Rational(15));
    CHECK(Rational::parse(" 9/6 ") == Rational(3, 2));
    CHECK(Rational::parse("-6/-4") == Rational(3, 2));
}

TEST_CASE("rational parse rejects malformed input") {
    CHECK_THROWS_AS(Rational::parse(""), eil::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/"), eil::ParseError);
    CHECK_THROWS_AS(Rational::parse("/2"), eil::ParseError);
    CHECK_THROWS_AS(Rational::parse("1.2.3"), eil::ParseError);
    CHECK_THROWS_AS(Rational::parse("abc"), eil::ParseError);
    CHECK_THROWS_AS(Rational::parse("1 2"), eil::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), eil::Error);
}

TEST_CASE("rational str round-trips through parse") {
    const Rational samples[] = {Rational(3, 2),  Rational(-7), Rational(0),
                                Rational(22, 7), Rational(-1, 1000000007),
                                Rational(BigInt("123456789123456789"), BigInt(997))};
    for (const Rational& r : samples) {
        CAPTURE(r.str());
        CHECK(Rational::parse(r.str()) == r);
    }
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational(-7).str() == "-7");
    CHECK(Rational(0).str() == "0");
}

TEST_CASE("from_double is exact on representable values") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(-0.75) == Rational(-3, 4));
    CHECK(Rational::from_double(3.0) == Rational(3));
    CHECK(Rational::from_double(0.0) == Rational(0));
    // 0.1 is not 1/10 in binary; the conversion must capture the true value.
    CHECK(Rational::from_double(0.1) ==
          Rational(BigInt("3602879701896397"), BigInt("36028797018963968")));
    CHECK(Rational::from_double(0.1) != Rational(1, 10));

    eil::RngStream rng(20260823, 0);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.next_unit() * 8.0 - 4.0;
        CHECK(Rational::from_double(x).to_double() == x);
    }
}

TEST_CASE("to_double matches quotient of big integers") {
    CHECK(Rational(1, 3).to_double() == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(Rational(-22, 7).to_double() == Catch::Approx(-22.0 / 7.0).epsilon(1e-15));
    const Rational huge(BigInt("1000000000000000000000"), BigInt(3));
    CHECK(huge.to_double() == Catch::Approx(1e21 / 3.0).epsilon(1e-12));
}
