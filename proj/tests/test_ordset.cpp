#include "doctest.h"
#include "generators.hpp"
#include "glpkit/ordset.hpp"

using namespace glpkit;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
OrdSet S(const char* s, const char* bound = "w^w") { return parse_ordset(s, O(bound)); }

// Probe grid: w^2*a + w*b + c with a, b, c <= 5.
std::vector<Ordinal> grid(const Ordinal& bound) {
  std::vector<Ordinal> out;
  for (std::uint64_t a = 0; a <= 5; ++a)
    for (std::uint64_t b = 0; b <= 5; ++b)
      for (std::uint64_t c = 0; c <= 5; ++c) {
        Ordinal x = add(add(Ordinal::omega_power(Ordinal(2), a), Ordinal::omega_power(Ordinal(1), b)), Ordinal(c));
        if (x < bound) out.push_back(x);
      }
  return out;
}
}  // namespace

TEST_CASE("membership") {
  OrdSet s = S("scaled(1,1,w)");
  CHECK(s.contains(O("w*3")));
  CHECK_FALSE(s.contains(O("w^2")));
  CHECK_FALSE(s.contains(O("0")));
  CHECK_FALSE(s.contains(O("w+1")));
}

TEST_CASE("intersection aligns scales") {
  CHECK(set_intersect(S("scaled(0,0,w^2)"), S("scaled(1,1,w)")) == S("scaled(1,1,w)"));
  CHECK(set_intersect(S("[0,w)"), S("scaled(1,0,3)")) == S("{0}"));
}

TEST_CASE("min, first_k, order type") {
  OrdSet s = S("{5} | scaled(1,1,w)");
  CHECK(s.min() == O("5"));
  auto first = s.first_k(4);
  REQUIRE(first.size() == 4);
  CHECK(first[0] == O("5"));
  CHECK(first[1] == O("w"));
  CHECK(first[3] == O("w*3"));
  CHECK(s.order_type() == O("w"));
  CHECK(S("[0,w*2)").order_type() == O("w*2"));
  CHECK(S("[0,w*2)").element_at(O("w+3")) == O("w+3"));
  CHECK(S("scaled(1,0,w)").element_at(O("7")) == O("w*7"));
  CHECK_FALSE(S("{1,2}").element_at(O("2")).has_value());
  CHECK_FALSE(OrdSet::empty().min().has_value());
}

TEST_CASE("sup of the first w elements") {
  CHECK(sup_first_omega(S("scaled(0,0,w)")) == O("w"));
  CHECK(sup_first_omega(S("{5} | scaled(1,1,w)")) == O("w^2"));
  CHECK_FALSE(sup_first_omega(S("{1, 4, w}")).has_value());
}

TEST_CASE("canonical printing") {
  CHECK(to_string(S("[w, w^2)")) == "[w, w^2)");
  CHECK(to_string(S("{5} | scaled(1,1,w)")) == "{5} | scaled(1, 1, w)");
  CHECK(to_string(S("[0,3) | [3,5)")) == "[0, 5)");
  CHECK(to_string(S("[0,w*3) | scaled(1,3,5)")) == "[0, w*3+1) | {w*4}");
  CHECK(to_string(S("scaled(1,0,3) | [w*3,w*3+5)")) == "scaled(1, 0, 4) | [w*3+1, w*3+5)");
  CHECK(to_string(S("scaled(1,0,4) | [w*3+1,w*3+5)")) == "scaled(1, 0, 4) | [w*3+1, w*3+5)");
  CHECK(to_string(S("{0} | scaled(1,1,3)")) == "scaled(1, 0, 3)");
  CHECK(to_string(S("{w^2} | scaled(2,2,4)")) == "scaled(2, 1, 4)");
  CHECK(to_string(S("X", "w^2+1")) == "[0, w^2+1)");
  CHECK(to_string(S("scaled(2,1,2)")) == "{w^2}");
  CHECK(to_string(OrdSet::empty()) == "{}");
}

TEST_CASE("the ambient bound clips and must match") {
  OrdSet s = parse_ordset("[0,w^3) @L=w^2");
  CHECK(s.bound() == O("w^2"));
  CHECK(s == OrdSet::whole(O("w^2")));
  CHECK_THROWS_AS(set_union(S("{1}", "w"), S("{1}", "w^2")), SetError);
  CHECK_THROWS_AS(parse_ordset("[0,w"), SetError);
  CHECK_THROWS_AS(parse_ordset("scaled(1,2)"), SetError);
}

TEST_CASE("set operations agree with pointwise membership") {
  std::mt19937_64 rng(testing::test_seed());
  for (const char* bound_text : {"w^2", "w^3", "w^2+1", "w^w"}) {
    Ordinal bound = O(bound_text);
    auto probe = grid(bound);
    for (int i = 0; i < 150; ++i) {
      OrdSet a = testing::random_set(rng, bound);
      OrdSet b = testing::random_set(rng, bound);
      OrdSet u = set_union(a, b);
      OrdSet n = set_intersect(a, b);
      bool sub = true;
      for (const auto& x : probe) {
        REQUIRE(u.contains(x) == (a.contains(x) || b.contains(x)));
        REQUIRE(n.contains(x) == (a.contains(x) && b.contains(x)));
        if (a.contains(x) && !b.contains(x)) sub = false;
      }
      // A witness on the grid refutes inclusion.
      if (!sub) CHECK_FALSE(is_subset(a, b));
      CHECK(is_subset(n, a));
      CHECK(is_subset(a, u));
      CHECK(is_subset(a, a));
      CHECK(normalize(a) == a);
      CHECK(normalize(u) == u);
      // Equal sets (by double inclusion) have identical canonical forms.
      if (is_subset(a, b) && is_subset(b, a)) CHECK(a == b);
      CHECK(set_union(a, n) == a);
      CHECK(set_union(a, b) == set_union(b, a));
      CHECK(set_intersect(a, u) == a);
      CHECK(parse_ordset(to_string(a), bound) == a);
    }
  }
}

TEST_CASE("canonical form is independent of how a set is assembled") {
  // Split every piece of a random set at random points and reassemble.
  std::mt19937_64 rng(testing::test_seed() + 7);
  Ordinal bound = O("w^3");
  for (int i = 0; i < 300; ++i) {
    OrdSet a = testing::random_set(rng, bound);
    OrdSet rebuilt = OrdSet::empty(bound);
    for (const auto& p : a.pieces()) {
      Ordinal cut = testing::random_ordinal(rng, 2, 5);
      OrdSet piece(bound, {p});
      OrdSet lower = set_intersect(piece, OrdSet::interval(bound, Ordinal(), cut));
      OrdSet upper = set_intersect(piece, OrdSet::interval(bound, cut, bound));
      // Describe the lower part point by point when it is small.
      if (auto k = lower.count_below(bound); k && *k <= 6) {
        for (const auto& x : lower.first_k(*k)) rebuilt = set_union(rebuilt, OrdSet::singleton(bound, x));
      } else {
        rebuilt = set_union(rebuilt, lower);
      }
      rebuilt = set_union(rebuilt, upper);
    }
    CHECK(rebuilt == a);
  }
}

TEST_CASE("count below") {
  CHECK(S("[0,w)").count_below(O("10")) == 10u);
  CHECK_FALSE(S("[0,w*2)").count_below(O("w+1")).has_value());
  CHECK(S("scaled(1,0,w)").count_below(O("w*3+1")) == 4u);
}
