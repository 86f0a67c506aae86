#include "doctest.h"
#include "generators.hpp"
#include "glpkit/ordinal.hpp"

using namespace glpkit;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
const Ordinal w = Ordinal::omega();
}  // namespace

TEST_CASE("parse and print") {
  CHECK(O("0").is_zero());
  CHECK(O("w") == w);
  CHECK(O("w^2*3+w+4") ==
        add(add(Ordinal::omega_power(Ordinal(2), 3), w), Ordinal(4)));
  CHECK(to_string(O("w^2*3+w+4")) == "w^2*3+w+4");
  CHECK(to_string(O("w^(w+1)*2")) == "w^(w+1)*2");
  CHECK(to_string(O("w^(2)")) == "w^2");
  CHECK(to_string(O("3 + w")) == "w");
  CHECK(to_string(O("w^w")) == "w^(w)");
  CHECK(O("w^(w)") == O("w^w"));
  CHECK_THROWS_AS(O("w^"), OrdinalParseError);
  CHECK_THROWS_AS(O("w +"), OrdinalParseError);
  CHECK_THROWS_AS(O("x"), OrdinalParseError);
}

TEST_CASE("addition absorbs on the left") {
  CHECK(add(Ordinal(1), w) == w);
  CHECK(add(w, Ordinal(1)) == O("w+1"));
  CHECK(add(O("w^2+w*3+7"), O("w*2+1")) == O("w^2+w*5+1"));
  CHECK(add(O("w+5"), O("w^2")) == O("w^2"));
}

TEST_CASE("comparison and classification") {
  CHECK(O("w^2*3+w") > O("w^2*3"));
  CHECK(O("w^2") > O("w*100+100"));
  CHECK(O("w*2").is_limit());
  CHECK_FALSE(O("w+1").is_limit());
  CHECK(O("w+1").is_successor());
  CHECK_FALSE(Ordinal().is_limit());
  CHECK_FALSE(Ordinal().is_successor());
  CHECK(predecessor(O("w*2+1")) == O("w*2"));
  CHECK_THROWS(predecessor(w));
  CHECK(successor(O("w^2")) == O("w^2+1"));
}

TEST_CASE("left multiplication by omega powers and division") {
  CHECK(omega_power_mul(Ordinal(1), O("3")) == O("w*3"));
  CHECK(omega_power_mul(Ordinal(1), O("w+2")) == O("w^2+w*2"));
  CHECK(left_divide_by_omega_power(Ordinal(1), O("w^2+w*2")) == O("w+2"));
  CHECK_FALSE(left_divide_by_omega_power(Ordinal(1), O("w+1")).has_value());
  CHECK(left_divide_by_omega_power(Ordinal(2), Ordinal()) == Ordinal());
  CHECK(round_up_to_multiple(O("w*3+2"), Ordinal(1)) == O("w*4"));
  CHECK(round_up_to_multiple(O("w^2+w+2"), Ordinal(2)) == O("w^2*2"));
  CHECK(round_up_to_multiple(O("w*3"), Ordinal(1)) == O("w*3"));
  CHECK(left_subtract(O("w+3"), O("w*2")) == w);
  CHECK(left_subtract(O("5"), O("w")) == w);
  CHECK(left_subtract(O("w*2+3"), O("w*2+5")) == O("2"));
  CHECK_FALSE(left_subtract(O("w"), O("5")).has_value());
}

TEST_CASE("arithmetic laws on random ordinals below w^w") {
  std::mt19937_64 rng(testing::test_seed());
  for (int i = 0; i < 10000; ++i) {
    Ordinal a = testing::random_ordinal(rng, 4, 6);
    Ordinal b = testing::random_ordinal(rng, 4, 6);
    Ordinal c = testing::random_ordinal(rng, 4, 6);
    Ordinal e = testing::random_ordinal(rng, 1, 3);
    REQUIRE(add(add(a, b), c) == add(a, add(b, c)));
    REQUIRE(omega_power_mul(e, add(b, c)) == add(omega_power_mul(e, b), omega_power_mul(e, c)));
    REQUIRE(add(a, b) >= b);
    REQUIRE(add(a, b) >= a);
    if (b < c) {
      REQUIRE(add(a, b) < add(a, c));
      REQUIRE(add(b, a) <= add(c, a));
      REQUIRE(omega_power_mul(e, b) < omega_power_mul(e, c));
    }
    if (a <= b) REQUIRE(add(a, *left_subtract(a, b)) == b);
    REQUIRE(left_divide_by_omega_power(e, omega_power_mul(e, a)) == a);
    Ordinal r = round_up_to_multiple(a, e);
    REQUIRE(r >= a);
    REQUIRE(is_multiple_of_omega_power(r, e));
    REQUIRE(parse_ordinal(to_string(a)) == a);
  }
}
