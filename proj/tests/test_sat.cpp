#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "glpkit/sat.hpp"

using namespace glpkit;
using glpkit::testing::FormulaGen;
using glpkit::testing::test_seed;

namespace {

bool brute_force_sat(int nvars, const std::vector<std::vector<int>>& clauses) {
  for (unsigned mask = 0; mask < (1u << nvars); ++mask) {
    bool all = true;
    for (const auto& c : clauses) {
      bool any = false;
      for (int l : c) {
        bool v = (mask >> (std::abs(l) - 1)) & 1u;
        if ((l > 0) == v) any = true;
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// Truth-table evaluation with modal subformulas as atoms.
bool tt_eval(const Formula& f, const std::vector<Formula>& atoms, unsigned mask) {
  switch (f.op()) {
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !tt_eval(f.lhs(), atoms, mask);
    case Op::And: return tt_eval(f.lhs(), atoms, mask) && tt_eval(f.rhs(), atoms, mask);
    case Op::Or: return tt_eval(f.lhs(), atoms, mask) || tt_eval(f.rhs(), atoms, mask);
    case Op::Imp: return !tt_eval(f.lhs(), atoms, mask) || tt_eval(f.rhs(), atoms, mask);
    default:
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i] == f) return (mask >> i) & 1u;
      return false;
  }
}

void collect_atoms(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Op::Var) || f.is_modal()) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    return;
  }
  if (f.is(Op::Top) || f.is(Op::Bot)) return;
  collect_atoms(f.lhs(), out);
  if (!f.is(Op::Not)) collect_atoms(f.rhs(), out);
}

}  // namespace

TEST_CASE("sat solver agrees with brute force on random 3-CNF") {
  std::mt19937_64 rng(test_seed());
  for (int round = 0; round < 2000; ++round) {
    int n = std::uniform_int_distribution<int>(1, 10)(rng);
    int m = std::uniform_int_distribution<int>(0, 5 * n)(rng);
    std::vector<std::vector<int>> clauses;
    SatSolver s;
    for (int i = 0; i < n; ++i) s.new_var();
    for (int c = 0; c < m; ++c) {
      int len = std::uniform_int_distribution<int>(1, 3)(rng);
      std::vector<int> cl;
      for (int k = 0; k < len; ++k) {
        int v = std::uniform_int_distribution<int>(1, n)(rng);
        cl.push_back(std::bernoulli_distribution(0.5)(rng) ? v : -v);
      }
      clauses.push_back(cl);
      s.add_clause(cl);
    }
    bool sat = s.solve();
    REQUIRE(sat == brute_force_sat(n, clauses));
    if (sat) {
      for (const auto& c : clauses) {
        bool any = false;
        for (int l : c) any |= (l > 0) == s.value(std::abs(l));
        REQUIRE(any);
      }
    }
  }
}

TEST_CASE("empty clause and trivial instances") {
  SatSolver s;
  CHECK(s.solve());
  s.new_var();
  s.add_clause({1});
  s.add_clause({-1});
  CHECK_FALSE(s.solve());
  SatSolver e;
  e.add_clause({});
  CHECK_FALSE(e.solve());
}

TEST_CASE("tautology examples") {
  CHECK(is_tautology(parse_formula("p -> p")));
  CHECK(is_tautology(parse_formula("[0]p | ~[0]p")));
  CHECK(is_tautology(parse_formula("T")));
  CHECK_FALSE(is_tautology(parse_formula("F")));
  CHECK_FALSE(is_tautology(parse_formula("[0]p -> p")));
  CHECK_FALSE(is_tautology(parse_formula("<0>p -> ~[0]~p")));
  CHECK(is_tautology(parse_formula("(p -> q) -> ((q -> r) -> (p -> r))")));
}

TEST_CASE("is_tautology agrees with truth tables") {
  FormulaGen gen(test_seed() + 1);
  gen.vars = {"p", "q", "r"};
  for (int i = 0; i < 3000; ++i) {
    Formula f = gen(1, 10);
    std::vector<Formula> atoms;
    collect_atoms(f, atoms);
    if (atoms.size() > 12) continue;
    bool taut = true;
    for (unsigned mask = 0; mask < (1u << atoms.size()) && taut; ++mask) taut = tt_eval(f, atoms, mask);
    REQUIRE_MESSAGE(is_tautology(f) == taut, to_string(f));
  }
}
