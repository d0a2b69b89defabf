#include "sld/rational.hpp"

#include "testutil.hpp"

#include <doctest.h>

using sld::BigInt;
using sld::Rational;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
  Rational a(2, 4);
  CHECK(a.numerator() == 1);
  CHECK(a.denominator() == 2);
  Rational b(1, -2);
  CHECK(b.numerator() == -1);
  CHECK(b.denominator() == 2);
  Rational c(-3, -6);
  CHECK(c == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts fractions and integers, rejects junk") {
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("-2/8") == Rational(-1, 4));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) * Rational(3, 7) == Rational(1, 7));
  CHECK(Rational(1) - Rational(1, 3) == Rational(2, 3));
  CHECK(Rational(1, 2) / Rational(2) == Rational(1, 4));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
  // comparisons are integer cross products, never float
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(333333333, 1000000000) < Rational(1, 3));
}

TEST_CASE("pow and display") {
  CHECK(Rational(1, 2).pow(10) == Rational(1, 1024));
  CHECK(Rational(2, 3).pow(0) == Rational(1));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(4).str() == "4");
  CHECK(Rational(1, 2).approx() == doctest::Approx(0.5));
  // display survives huge exact values
  Rational tiny = Rational(1, 2).pow(5000);
  CHECK(tiny.approx() >= 0.0);
  CHECK(tiny.approx() < 1e-300);
  CHECK(tiny > Rational(0));
}

TEST_CASE("random arithmetic identities") {
  sldtest::Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    Rational a = rng.unit_rational(20), b = rng.unit_rational(20);
    CHECK(a + b - b == a);
    CHECK((a + b) == (b + a));
    if (!b.is_zero())
      CHECK(a / b * b == a);
    CHECK(sld::min(a, b) + sld::max(a, b) == a + b);
  }
}
