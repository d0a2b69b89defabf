#include "sld/discount.hpp"

#include "testutil.hpp"

#include <doctest.h>

using sld::DiscountFn;
using sld::Rational;

TEST_CASE("exponential and hyperbolic values match the secretary table") {
  DiscountFn ann = DiscountFn::hyperbolic();
  DiscountFn bob = DiscountFn::exponential(Rational(1, 2));
  const Rational ann_expect[] = {Rational(1), Rational(1, 2), Rational(1, 3),
                                 Rational(1, 4)};
  const Rational bob_expect[] = {Rational(1), Rational(1, 2), Rational(1, 4),
                                 Rational(1, 8)};
  for (unsigned long i = 0; i < 4; ++i) {
    CHECK(sld::discount_value(ann, i) == ann_expect[i]);
    CHECK(sld::discount_value(bob, i) == bob_expect[i]);
  }
  CHECK(sld::discount_value(bob, 3) == Rational(1, 8));
  CHECK(sld::discount_value(ann, 2) == Rational(1, 3));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(DiscountFn::exponential(Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(DiscountFn::exponential(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(DiscountFn::exponential(Rational(3, 2)), std::invalid_argument);
  DiscountFn e = DiscountFn::exponential(Rational(1, 2));
  CHECK_THROWS_AS(DiscountFn::scaled(Rational(0), e), std::invalid_argument);
  CHECK_THROWS_AS(DiscountFn::scaled(Rational(2), e), std::invalid_argument);
  // scale 1 collapses to the inner function
  CHECK(DiscountFn::scaled(Rational(1), e) == e);
  // tables must be non-increasing, inside [0,1] and dominate the tail
  CHECK_THROWS_AS(DiscountFn::table_then_tail({}, e), std::invalid_argument);
  CHECK_THROWS_AS(DiscountFn::table_then_tail({Rational(1, 2), Rational(3, 4)}, e),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiscountFn::table_then_tail({Rational(3, 2)}, e), std::invalid_argument);
  // tail at index 1 is 1/2 > 1/4: junction violation
  CHECK_THROWS_AS(DiscountFn::table_then_tail({Rational(1, 4)}, e), std::invalid_argument);
  // absolute tail indexing: d(3) continues at lambda^3
  DiscountFn pie = DiscountFn::table_then_tail({Rational(1), Rational(1), Rational(1)}, e);
  CHECK(pie.at(2) == Rational(1));
  CHECK(pie.at(3) == Rational(1, 8));
  CHECK(pie.at(4) == Rational(1, 16));
}

TEST_CASE("shift semantics and normalizations") {
  DiscountFn e = DiscountFn::exponential(Rational(1, 2));
  DiscountFn h = DiscountFn::hyperbolic();
  CHECK(sld::shift_discount(e, 1).at(0) == Rational(1, 2));
  CHECK(sld::shift_discount(h, 2).at(1) == Rational(1, 4));
  CHECK(sld::shift_discount(e, 0) == e);
  // shift of an exponential becomes a scaled exponential
  DiscountFn se = sld::shift_discount(e, 3);
  CHECK(se.kind() == DiscountFn::Kind::Scaled);
  CHECK(se.factor() == Rational(1, 8));
  CHECK(se.inner().kind() == DiscountFn::Kind::Exponential);
  // nested shifts flatten
  DiscountFn hh = sld::shift_discount(sld::shift_discount(h, 1), 2);
  CHECK(hh.kind() == DiscountFn::Kind::Shifted);
  CHECK(hh.shift_amount() == 3);
  // shifting a table drops the consumed prefix
  DiscountFn pie = DiscountFn::table_then_tail({Rational(1), Rational(1), Rational(1)}, e);
  DiscountFn pie1 = sld::shift_discount(pie, 1);
  for (unsigned long i = 0; i < 8; ++i)
    CHECK(pie1.at(i) == pie.at(i + 1));
  DiscountFn pie5 = sld::shift_discount(pie, 5);
  for (unsigned long i = 0; i < 8; ++i)
    CHECK(pie5.at(i) == pie.at(i + 5));
}

TEST_CASE("crossing index per variant") {
  DiscountFn e = DiscountFn::exponential(Rational(1, 2));
  DiscountFn h = DiscountFn::hyperbolic();
  CHECK(sld::crossing_index(e, Rational(1, 8)) == 3);
  CHECK(sld::crossing_index(h, Rational(1, 4)) == 3);
  CHECK(sld::crossing_index(e, Rational(1)) == 0);
  DiscountFn pie = DiscountFn::table_then_tail({Rational(1), Rational(1), Rational(1)}, e);
  CHECK(sld::crossing_index(pie, Rational(1, 10)) == 4);
  CHECK_THROWS_AS(sld::crossing_index(e, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(sld::crossing_index(e, Rational(-1, 2)), std::invalid_argument);
}

TEST_CASE("random variants are non-increasing with values in [0,1]") {
  sldtest::Rng rng(7);
  for (int t = 0; t < 12; ++t) {
    DiscountFn d = sldtest::random_discount(rng, false);
    Rational prev = d.at(0);
    CHECK(prev.in_unit_interval());
    unsigned long limit = t < 3 ? 1000 : 120;
    for (unsigned long i = 1; i <= limit; ++i) {
      Rational cur = d.at(i);
      CHECK(cur.in_unit_interval());
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("random crossing indices are tight") {
  sldtest::Rng rng(8);
  for (int t = 0; t < 60; ++t) {
    DiscountFn d = sldtest::random_discount(rng, false);
    Rational bound = rng.unit_rational(16);
    if (bound.is_zero())
      bound = Rational(1, 17);
    unsigned long ci = sld::crossing_index(d, bound);
    CHECK(d.at(ci) <= bound);
    if (ci > 0)
      CHECK(d.at(ci - 1) > bound);
  }
}

TEST_CASE("random shifts agree pointwise with reindexing") {
  sldtest::Rng rng(9);
  for (int t = 0; t < 60; ++t) {
    DiscountFn d = sldtest::random_discount(rng, false);
    unsigned long k = static_cast<unsigned long>(rng.below(6));
    DiscountFn s = sld::shift_discount(d, k);
    for (int probe = 0; probe < 8; ++probe) {
      unsigned long i = static_cast<unsigned long>(rng.below(12));
      CHECK(s.at(i) == d.at(i + k));
    }
  }
}
