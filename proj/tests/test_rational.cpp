#include "doctest.h"

#include "groupmms/errors.hpp"
#include "groupmms/rational.hpp"

using namespace groupmms;

TEST_CASE("parse and format round trip") {
  CHECK(format_rational(parse_rational("3/4")) == "3/4");
  CHECK(format_rational(parse_rational("5")) == "5/1");
  CHECK(format_rational(parse_rational("-7/2")) == "-7/2");
  CHECK(format_rational(parse_rational("0")) == "0/1");
}

TEST_CASE("parsing normalizes to lowest terms") {
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(format_rational(parse_rational("6/3")) == "2/1");
  CHECK(parse_rational("123456789012345678901234567890/2") ==
        Rational(BigInt("61728394506172839450617283945"), BigInt(1)));
}

TEST_CASE("zero denominator is a parse error") {
  CHECK_THROWS_WITH_AS(parse_rational("3/0"), doctest::Contains("PARSE_ERROR"), DomainError);
}

TEST_CASE("malformed text is a parse error") {
  for (const char* bad : {"", "a", "1/2/3", "1.5", "+3", "3/-2", "-", "2/"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), DomainError);
  }
}

TEST_CASE("pow and ceil helpers") {
  CHECK(pow_rational(Rational(7, 8), 5) == Rational(16807, 32768));
  CHECK(pow_rational(Rational(3, 4), 0) == Rational(1));
  CHECK(ceil_rational(Rational(7, 2)) == 4);
  CHECK(ceil_rational(Rational(-7, 2)) == -3);
  CHECK(ceil_rational(Rational(6)) == 6);
}

TEST_CASE("ceil_log2 on exact powers and in between") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(1ULL << 40) == 40);
  CHECK(ceil_log2((1ULL << 40) + 1) == 41);
}
