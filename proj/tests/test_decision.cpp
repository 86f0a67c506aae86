#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "glpkit/countermodel.hpp"
#include "glpkit/decision.hpp"
#include "glpkit/prover.hpp"

using namespace glpkit;
using glpkit::testing::FormulaGen;
using glpkit::testing::test_seed;

namespace {
Formula P(const char* s) { return parse_formula(s); }

Budgets small() {
  Budgets b;
  b.proof = 6;
  b.model = 4;
  return b;
}

// Refutable by brute force over all valuations on the enumerated frames?
bool brute_refutable(const Formula& f, std::size_t max_nodes) {
  auto vars = signature(f).variables;
  std::vector<std::string> vs(vars.begin(), vars.end());
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    for (const JModel& frame : tree_frames(n, signature(f).max_modality.value_or(0))) {
      std::size_t bits = vs.size() * n;
      for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
        JModel w = frame;
        for (std::size_t k = 0; k < bits; ++k)
          if ((mask >> k) & 1u) w.set_true(vs[k / n], k % n);
        for (const auto& v : vs) w.declare_var(v);
        auto t = truth_set(w, f);
        for (bool b : t)
          if (!b) return true;
      }
    }
  }
  return false;
}
}  // namespace

TEST_CASE("j_decide examples") {
  auto lob = j_decide(P("[0]([0]p -> p) -> [0]p"));
  CHECK(lob.verdict == Verdict::Proved);
  CHECK(verify(lob));

  auto up = j_decide(P("<0>p -> <1>p"));
  REQUIRE(up.verdict == Verdict::Refuted);
  CHECK(up.model->size() == 2);
  CHECK(verify(up));

  auto bot = j_decide(P("[0]F"));
  REQUIRE(bot.verdict == Verdict::Refuted);
  CHECK(verify(bot));
  CHECK_FALSE(bot.model->successors(0, bot.node).empty());

  // Monotonicity separates J from GLP.
  auto mono = j_decide(P("<1>p -> <0>p"));
  CHECK(mono.verdict == Verdict::Refuted);
  CHECK(verify(mono));
}

TEST_CASE("glp_decide examples") {
  for (const char* s : {"<1>p -> <0>p", "<0>p -> [1]<0>p", "<1>p -> <0>(p & <0>(p & T))", "[0]p -> [1]p"}) {
    auto o = glp_decide(P(s));
    CHECK_MESSAGE(o.verdict == Verdict::Proved, std::string(s));
    CHECK_MESSAGE(verify(o), std::string(s));
    CHECK(o.system == System::GLP);
  }
  for (const char* s : {"<1>p -> <0>~p", "<0>p -> <1>p", "<0>T"}) {
    auto o = glp_decide(P(s));
    CHECK_MESSAGE(o.verdict == Verdict::Refuted, std::string(s));
    CHECK_MESSAGE(verify(o), std::string(s));
  }
}

TEST_CASE("entails examples") {
  CHECK(entails({P("<1>p")}, P("<0>p")).verdict == Verdict::Proved);
  CHECK(entails({}, P("T")).verdict == Verdict::Proved);
  CHECK(entails({P("p"), P("q")}, P("p & q")).verdict == Verdict::Proved);
  CHECK(entails({P("<0>p")}, P("<1>p")).verdict == Verdict::Refuted);
}

TEST_CASE("reduction coherence and budget monotonicity") {
  for (const char* s : {"<1>p -> <0>~p", "<0>p -> <1>p", "<1>(p & q) -> <0>(p & ~q)", "<2>p -> <1><0>p"}) {
    Formula f = P(s);
    auto g = glp_decide(f);
    if (g.verdict != Verdict::Refuted) continue;
    auto j = j_decide(Formula::imp(build_m_plus(f), f));
    REQUIRE(j.verdict == Verdict::Refuted);
    CHECK(model_to_json(*j.model) == model_to_json(*g.model));
    CHECK(j.node == g.node);
  }
  FormulaGen gen(test_seed() + 11);
  for (int i = 0; i < 60; ++i) {
    Formula f = gen(2, 6);
    Budgets lo;
    lo.proof = 1;
    lo.model = 1;
    auto a = j_decide(f, lo);
    auto b = j_decide(f, small());
    if (a.verdict != Verdict::Unknown) CHECK_MESSAGE(a.verdict == b.verdict, to_string(f));
  }
}

TEST_CASE("certificates re-check on random formulas") {
  FormulaGen gen(test_seed() + 3);
  int proved = 0, refuted = 0;
  for (int i = 0; i < 300; ++i) {
    gen.max_index = static_cast<Modality>(i % 3);
    Formula f = gen(2, 6);
    auto o = j_decide(f, small());
    if (o.verdict == Verdict::Unknown) continue;
    REQUIRE_MESSAGE(verify(o), to_string(f));
    (o.verdict == Verdict::Proved ? proved : refuted)++;
    if (o.verdict == Verdict::Proved && signature(f).variables.size() <= 2)
      CHECK_MESSAGE(!brute_refutable(f, 3), to_string(f));
  }
  CHECK(proved > 0);
  CHECK(refuted > 0);
}

TEST_CASE("GLP certificates re-check on random implications") {
  FormulaGen gen(test_seed() + 5);
  for (int i = 0; i < 60; ++i) {
    Formula f = Formula::imp(Formula::dia(1, gen(1, 3)), Formula::dia(0, gen(1, 3)));
    auto o = glp_decide(f, small());
    if (o.verdict != Verdict::Unknown) REQUIRE_MESSAGE(verify(o), to_string(f));
  }
}

TEST_CASE("serial and parallel countermodel search agree") {
  FormulaGen gen(test_seed() + 9);
  for (int i = 0; i < 120; ++i) {
    gen.max_index = static_cast<Modality>(i % 3);
    Formula f = gen(2, 6);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto a = find_countermodel_serial(f, n);
      auto b = find_countermodel_parallel(f, n);
      REQUIRE(a.has_value() == b.has_value());
      if (!a) continue;
      CHECK(a->frame == b->frame);
      CHECK(model_to_json(a->model) == model_to_json(b->model));
      CHECK(a->node == b->node);
      CHECK_FALSE(eval(a->model, a->node, f));
      break;
    }
  }
}

TEST_CASE("frame enumeration") {
  // Rooted unlabelled trees: 1, 1, 2, 4, 9, 20.
  std::vector<std::size_t> expected{1, 1, 2, 4, 9, 20};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(tree_frames(n, 0).size() == expected[n - 1]);
  for (Modality r = 0; r <= 2; ++r)
    for (std::size_t n = 1; n <= 5; ++n)
      for (const JModel& w : tree_frames(n, r)) {
        CHECK(validate_frame(w).empty());
        CHECK(hereditary_root(w) == std::optional<NodeId>(0));
      }
}

TEST_CASE("conservativity reports") {
  std::vector<Formula> a;
  for (unsigned k = 0; k <= 3; ++k) a.push_back(build_q(0, k, P("p")));
  std::vector<Formula> zs{P("T"), P("p"), P("~p"), P("<0>T")};
  auto r = conservative_n(a, {P("<1>p")}, 0, zs);
  CHECK(r.overall == Verdict::Proved);
  for (const auto& s : r.samples) {
    CHECK(s.from_b.verdict != Verdict::Unknown);
    if (s.from_a) CHECK(verify(*s.from_a));
  }

  auto same = conservative_n({P("<1>p")}, {P("<1>p")}, 0, zs);
  CHECK(same.overall == Verdict::Proved);

  auto bad = conservative_n({P("T")}, {P("<1>T")}, 0, {P("T")});
  CHECK(bad.overall == Verdict::Refuted);
  REQUIRE(bad.witness);
  CHECK(*bad.witness == P("T"));
}

TEST_CASE("reduction witness") {
  auto w1 = reduction_witness(P("p"), P("p"), 0, 4);
  CHECK(w1.status == ReductionWitness::Status::Found);
  CHECK(w1.k == 1u);
  CHECK(w1.minimal);
  CHECK(w1.within_bound);

  auto w2 = reduction_witness(P("T"), P("<0>T"), 0, 4);
  CHECK(w2.k == 2u);
  CHECK(w2.minimal);
  CHECK(w2.attempts[1].verdict == Verdict::Refuted);
  CHECK(verify(w2.attempts[1]));

  auto w3 = reduction_witness(P("p"), P("~p"), 0, 4);
  CHECK(w3.status == ReductionWitness::Status::PremiseNotEstablished);
  CHECK(w3.premise.verdict == Verdict::Refuted);

  auto w4 = reduction_witness(P("T"), P("<0><0><0>T"), 0, 2);
  CHECK(w4.status == ReductionWitness::Status::NotFound);
}

TEST_CASE("reduction property suite and theorem pi") {
  std::vector<Formula> zs{P("T"), P("p"), P("~p"), P("<0>T")};
  CHECK(reduction_property_suite(P("p"), 0, 3, zs).passed);
  CHECK(reduction_property_suite(P("T"), 1, 2, {P("T"), P("<0>T"), P("<1>T")}).passed);
  auto r0 = reduction_property_suite(P("p"), 0, 0, {});
  CHECK(r0.converse.at(0).verdict == Verdict::Proved);

  CHECK(theorem_pi_check(P("p"), 0, {P("<0>T"), P("<0>p"), P("T")}, 3).overall == Verdict::Proved);
  CHECK(theorem_pi_check(P("T"), 1, {P("<1>T"), P("<0>T & <1>T")}, 3).overall == Verdict::Proved);
  CHECK_THROWS_AS(theorem_pi_check(P("p"), 0, {P("[0]q")}, 3), std::invalid_argument);
}
