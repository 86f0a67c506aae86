// Acceptance run: one PASS/FAIL line per criterion.  The exit status is
// the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

// The shared generators carry doctest printers; no test registry here.
#define DOCTEST_CONFIG_DISABLE

#include "generators.hpp"
#include "oracles.hpp"
#include "surgery_inputs.hpp"

#include "glpkit/decision.hpp"
#include "glpkit/space.hpp"
#include "glpkit/surgery.hpp"

using namespace glpkit;
namespace gt = glpkit::testing;

namespace {

Formula P(const char* s) { return parse_formula(s); }
Ordinal O(const char* s) { return parse_ordinal(s); }

struct Result {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------

Result axiom_suite() {
  const std::vector<const char*> theorems{
      "<0>(p | q) -> <0>p | <0>q",
      "<0>p | <0>q -> <0>(p | q)",
      "<1>(p | q) -> <1>p | <1>q",
      "~<0>F",
      "~<1>F",
      "<0>p -> <0>(p & ~<0>p)",
      "<0>(p & ~<0>p) -> <0>p",
      "<1>p -> <1>(p & ~<1>p)",
      "<1>(p & ~<1>p) -> <1>p",
      "<1>p -> <0>p",
      "<2>q -> <1>q",
      "<0>p -> [1]<0>p",
  };
  const std::vector<const char*> non_theorems{
      "<0>p -> <1>p",   "[0]F",          "<0>p -> <0><0>p", "p -> <0>p",
      "<0>p -> [0]<0>p", "[0]p -> p",    "[1]p -> [0]p",    "<0>p & <0>q -> <0>(p & q)",
  };
  int proved = 0, refuted = 0, unknown = 0, bad = 0;
  std::string wrong;
  auto run = [&](const char* s, Verdict want) {
    auto o = glp_decide(P(s));
    if (o.verdict == Verdict::Unknown) ++unknown;
    if (o.verdict != Verdict::Unknown && !verify(o)) ++bad;
    if (o.verdict == want) {
      (want == Verdict::Proved ? proved : refuted)++;
    } else {
      wrong += std::string(" [") + s + ": " + to_string(o.verdict) + "]";
    }
  };
  for (const char* s : theorems) run(s, Verdict::Proved);
  for (const char* s : non_theorems) run(s, Verdict::Refuted);
  std::ostringstream d;
  d << proved << "/12 proved, " << refuted << "/8 refuted, " << unknown << " unknown, " << bad
    << " certificates rejected" << wrong;
  return {proved == 12 && refuted == 8 && unknown == 0 && bad == 0, d.str()};
}

Result q_direction() {
  int ok = 0;
  std::string wrong;
  for (Modality n : {0u, 1u}) {
    for (unsigned k : {1u, 2u, 3u}) {
      Formula f = Formula::imp(Formula::dia(n + 1, P("p")), build_q(n, k, P("p")));
      auto o = glp_decide(f);
      if (o.verdict == Verdict::Proved && verify(o)) ++ok;
      else wrong += " [n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + to_string(o.verdict) + "]";
    }
  }
  return {ok == 6, std::to_string(ok) + "/6 proved with verified derivations" + wrong};
}

Result reduction_witnesses() {
  struct Fixture {
    const char* psi;
    const char* phi;
    unsigned k;
  };
  const std::vector<Fixture> fixtures{{"p", "p", 1}, {"T", "<0>T", 2}};
  bool all = true;
  std::ostringstream d;
  for (const auto& fx : fixtures) {
    if (&fx != &fixtures.front()) d << "; ";
    auto r = reduction_witness(P(fx.psi), P(fx.phi), 0, 6);
    bool prev_refuted = r.k && *r.k >= 1 && r.attempts.size() >= *r.k &&
                        r.attempts[*r.k - 1].verdict == Verdict::Refuted && verify(r.attempts[*r.k - 1]);
    bool ok = r.status == ReductionWitness::Status::Found && r.k == fx.k && r.minimal && prev_refuted &&
              r.within_bound && verify(r.attempts[*r.k]);
    all = all && ok;
    d << "(" << fx.psi << ", " << fx.phi << "): k=" << (r.k ? std::to_string(*r.k) : "none")
      << (prev_refuted ? ", k-1 refuted" : ", k-1 not refuted") << ", bound " << r.a_priori_bound
      << (r.within_bound ? " holds" : " violated");
  }
  return {all, d.str()};
}

Result surgery_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto inputs = gt::surgery_inputs(rng, 200);
  int failures = 0;
  for (const auto& in : inputs) {
    try {
      auto r = surgery(in.model, in.m, in.psi, in.phi, in.k);
      if (!validate_frame(r.model).empty() || !check_surgery_conclusion(r.model, r.b, in.m, in.psi, in.phi).ok())
        ++failures;
    } catch (const SurgeryError&) {
      ++failures;
    }
  }
  std::ostringstream d;
  d << inputs.size() << " inputs, " << failures << " failures";
  return {inputs.size() >= 200 && failures == 0, d.str()};
}

Result j_soundness(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  gt::FormulaGen gen(rng());
  const std::vector<std::string> schemas{"dual", "dual-back", "K", "lob", "dia-up", "box-up", "box-in"};
  long pairs = 0, violations = 0;
  bool separated = false;
  Formula mono = P("<1>p -> <0>p");
  while (pairs < 12000) {
    JModel w = gt::random_jmodel(rng, 5, 2);
    if (!separated) {
      auto t = truth_set(w, mono);
      for (bool b : t) separated = separated || !b;
    }
    for (int round = 0; round < 4; ++round) {
      Formula a = gen(1, 4), b = gen(1, 4);
      Modality i = std::uniform_int_distribution<Modality>(0, 1)(rng);
      Modality j = i + std::uniform_int_distribution<Modality>(1, 2)(rng);
      for (const auto& s : schemas) {
        auto t = truth_set(w, gt::j_schema_instance(s, i, j, a, b));
        for (bool v : t) violations += v ? 0 : 1;
        ++pairs;
      }
    }
  }
  std::ostringstream d;
  d << pairs << " pairs, " << violations << " violations, <1>p -> <0>p "
    << (separated ? "falsified" : "never falsified");
  return {violations == 0 && separated, d.str()};
}

std::vector<OrdSet> corpus(std::mt19937_64& rng, const Ordinal& bound, unsigned max_exp, std::size_t count) {
  std::vector<OrdSet> out{OrdSet::whole(bound), OrdSet::empty(bound),
                          OrdSet::interval(bound, Ordinal(0), Ordinal::omega()),
                          OrdSet::singleton(bound, Ordinal(5))};
  while (out.size() < count) out.push_back(gt::random_set(rng, bound, max_exp, 3));
  return out;
}

std::vector<Ordinal> grid_below(const Ordinal& x) {
  std::vector<Ordinal> out;
  for (const Ordinal& g : probe_grid(5))
    if (g < x) out.push_back(g);
  return out;
}

Result weak_reduction(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 2);
  struct Space {
    const char* bound;
    unsigned max_exp;
  };
  const std::vector<Space> spaces{{"w^2", 1}, {"w^3", 2}, {"w^w", 2}};
  const auto full = probe_grid(5);
  const auto low = grid_below(O("w^2"));
  int sets = 0, unequal = 0;
  std::size_t mismatches = 0, probes = 0;
  for (const auto& sp : spaces) {
    for (const OrdSet& a : corpus(rng, O(sp.bound), sp.max_exp, 50)) {
      ++sets;
      auto r = weak_reduction_check(a);
      if (!r.equal) ++unequal;
      auto o0 = [&](const Ordinal& x) { return gt::oracle_d0(a, x); };
      auto o1 = [&](const Ordinal& x) { return gt::oracle_d1(a, x); };
      mismatches += probe_check_parallel(d0(a), o0, low).size() + probe_check_parallel(d1(a), o1, low).size();
      // Both sides hold at x exactly when infinitely many elements of A lie
      // below x; with small parameters 40 elements already force that.
      auto infinite_below = [&](const Ordinal& x) {
        auto first = a.first_k(40);
        return x < a.bound() && first.size() == 40 && first.back() < x;
      };
      mismatches += probe_check_parallel(r.lhs, infinite_below, full).size() +
                    probe_check_parallel(r.rhs, infinite_below, full).size();
      probes += 2 * low.size() + 2 * full.size();
    }
  }
  std::ostringstream d;
  d << sets << " sets over w^2, w^3, w^w: " << unequal << " with c0(d1 A) != d0^w[A]; " << mismatches << " of "
    << probes << " probes disagree with the pointwise oracles";
  return {unequal == 0 && mismatches == 0, d.str()};
}

Result powerset_identities(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 3);
  const Ordinal bound = O("w^3");
  const auto grid = probe_grid(5);
  std::size_t failures = 0;
  std::string first;
  auto fail = [&](const std::string& what, const OrdSet& a, const Ordinal& x) {
    if (failures++ == 0) first = what + " at " + to_string(x) + " for " + to_string(a);
  };
  const int count = 120;
  for (int i = 0; i < count; ++i) {
    OrdSet a = gt::random_set(rng, bound, 2, 3);
    OrdSet b = gt::random_set(rng, bound, 2, 3);
    for (int n : {0, 1}) {
      OrdSet da = derive(a, n), db = derive(b, n), dab = derive(set_union(a, b), n);
      if (!derive(OrdSet::empty(bound), n).is_empty()) fail("(ii)", a, Ordinal(0));
      // A \ d_n(A) is not representable in general; its derivative is
      // evaluated pointwise.
      auto rest = [&](const Ordinal& y) { return a.contains(y) && !da.contains(y); };
      auto lob = [&](const Ordinal& x) {
        if (n == 1) return gt::oracle_d1(rest, bound, x);
        for (const Ordinal& y : a.first_k(8))
          if (y < x && rest(y)) return true;
        return false;
      };
      for (const Ordinal& x : grid) {
        if (dab.contains(x) != (da.contains(x) || db.contains(x))) fail("(i)", a, x);
        if (da.contains(x) != lob(x)) fail("(iii)", a, x);
      }
    }
    OrdSet a0 = d0(a), a1 = d1(a);
    auto outside = [&](const Ordinal& y) { return y < bound && !a0.contains(y); };
    auto m = a.min();
    for (const Ordinal& x : grid) {
      if (a1.contains(x) && !a0.contains(x)) fail("(iv)", a, x);
      if (a0.contains(x)) {
        // d0(A) <= [1]d0(A): no point of d0(A) is a d1-limit of its complement,
        // and the whole interval (min A, x] lies in d0(A).
        if (gt::oracle_d1(outside, bound, x)) fail("(v)", a, x);
        for (const Ordinal& y : grid)
          if (*m < y && !(x < y) && !a0.contains(y)) fail("(v) neighbourhood", a, x);
      }
    }
  }
  std::ostringstream d;
  d << count << " set pairs, n in {0,1}, " << grid.size() << " probes each: " << failures << " failures";
  if (failures) d << ", first " << first;
  return {failures == 0, d.str()};
}

Result compactness(std::uint64_t seed) {
  Ordinal w = Ordinal::omega();
  auto v = compactness_stage_check(OrdSet::whole(w), OrdSet::empty(w));
  bool vignette = !v.finite_stage && v.limit_holds && !v.agree && v.ok;
  std::mt19937_64 rng(seed + 4);
  Ordinal bound = O("w^2+1");
  auto sets = corpus(rng, bound, 2, 60);
  int pairs = 0, disagree = 0;
  for (const auto& a : sets) {
    for (std::size_t j = 0; j < sets.size(); j += 6) {
      auto r = compactness_stage_check(a, sets[j]);
      ++pairs;
      if (!r.agree) ++disagree;
    }
  }
  std::ostringstream d;
  d << "on w with A = X, B = empty: finite stage " << (v.finite_stage ? "found" : "none") << ", w-stage inclusion "
    << (v.limit_holds ? "holds" : "fails") << "; on w^2+1: " << disagree << " disagreements in " << pairs
    << " pairs";
  return {vignette && disagree == 0, d.str()};
}

Result proposition(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 5);
  Ordinal bound = O("w^3");
  auto grid = probe_grid(5);
  int contradictions = 0, positives = 0, witnessed = 0, unwitnessed = 0;
  for (int n : {0, 1}) {
    for (int pair = 0; pair < 50; ++pair) {
      OrdSet a = gt::random_set(rng, bound, 2, 3);
      OrdSet b = gt::random_set(rng, bound, 2, 3);
      if (pair % 5 == 0) b = set_union(b, a);  // some pairs where A |-_n B is plausible
      std::vector<OrdSet> zs;
      for (const Ordinal& y : a.first_k(3)) zs.push_back(OrdSet::singleton(bound, y));
      for (const Ordinal& y : b.first_k(3)) zs.push_back(OrdSet::singleton(bound, y));
      while (zs.size() < 200) {
        switch (zs.size() % 3) {
          case 0:
            zs.push_back(gt::random_set(rng, bound, 2, 3));
            break;
          case 1:
            zs.push_back(derive(gt::random_set(rng, bound, 2, 3), n));
            break;
          default:
            zs.push_back(OrdSet::singleton(bound, grid[std::uniform_int_distribution<std::size_t>(0, grid.size() - 1)(rng)]));
        }
      }
      bool claimed = conservative_n_sets(a, b, n);
      bool refuted = false;
      for (const auto& z : zs) {
        OrdSet dz = derive(z, n);
        if (is_subset(b, dz) && !is_subset(a, dz)) {
          refuted = true;
          break;
        }
      }
      if (claimed) {
        ++positives;
        if (refuted) ++contradictions;
      } else {
        (refuted ? witnessed : unwitnessed)++;
      }
    }
  }
  std::ostringstream d;
  d << "100 pairs x 200 Z: " << contradictions << " contradictions; " << positives << " entailments, "
    << witnessed << " non-entailments witnessed by a sampled Z, " << unwitnessed << " not witnessed";
  return {contradictions == 0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glpkit acceptance run"};
  std::uint64_t seed = 20240611;
  app.add_option("--seed", seed, "seed for the randomized criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"axiom suite", axiom_suite},
      {"Q-direction", q_direction},
      {"reduction witness", reduction_witnesses},
      {"surgery suite", [&] { return surgery_suite(seed); }},
      {"J-soundness fuzz", [&] { return j_soundness(seed); }},
      {"topology identities", [&] { return weak_reduction(seed); }},
      {"powerset GLP identities", [&] { return powerset_identities(seed); }},
      {"compactness", [&] { return compactness(seed); }},
      {"proposition cross-check", [&] { return proposition(seed); }},
  };
  std::cout << "seed " << seed << '\n';
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": " << r.detail << " ("
              << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
  }
  return failed;
}
