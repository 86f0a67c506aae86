#include "glpkit/decision.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "glpkit/countermodel.hpp"
#include "glpkit/prover.hpp"

namespace glpkit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "proved";
    case Verdict::Refuted: return "refuted";
    default: return "unknown";
  }
}

Budgets Budgets::defaults() {
  Budgets b;
  if (const char* s = std::getenv("GLPKIT_BUDGET_SCALE")) {
    double scale = std::strtod(s, nullptr);
    if (scale > 0) {
      b.proof = std::max(1u, static_cast<unsigned>(b.proof * scale));
      b.model = std::max(1u, static_cast<unsigned>(b.model * scale));
    }
  }
  return b;
}

bool verify(const DecisionOutcome& o) {
  switch (o.verdict) {
    case Verdict::Proved:
      return o.proof && check_derivation(*o.proof, o.formula, o.system).ok;
    case Verdict::Refuted:
      return o.model && validate_frame(*o.model).empty() && o.node < o.model->size() && !eval(*o.model, o.node, o.formula);
    default:
      return false;
  }
}

namespace {

std::optional<Countermodel> search_models(const Formula& f, std::size_t nodes, bool parallel) {
  return parallel ? find_countermodel_parallel(f, nodes) : find_countermodel_serial(f, nodes);
}

// Shared alternation; prove(L) is the proof attempt at depth L.
template <class ProveFn>
DecisionOutcome alternate(const Formula& refute_target, const Budgets& b, ProveFn prove) {
  DecisionOutcome out;
  out.formula = refute_target;
  bool proof_alive = true;
  unsigned top = std::max(b.proof, b.model);
  for (unsigned level = 1; level <= top; ++level) {
    if (proof_alive && level <= b.proof) {
      bool exhausted = false;
      if (auto d = prove(level, exhausted)) {
        out.verdict = Verdict::Proved;
        out.proof = std::move(d);
        return out;
      }
      if (exhausted) proof_alive = false;
    }
    if (level <= b.model) {
      if (auto cm = search_models(refute_target, level, b.parallel)) {
        out.verdict = Verdict::Refuted;
        out.model = std::move(cm->model);
        out.node = cm->node;
        return out;
      }
    }
  }
  return out;
}

}  // namespace

DecisionOutcome j_decide(const Formula& f, const Budgets& b) {
  JProver prover;
  auto out = alternate(f, b, [&](unsigned level, bool& exhausted) {
    auto d = prover.prove(f, level);
    exhausted = prover.exhausted();
    return d;
  });
  out.system = System::J;
  return out;
}

DecisionOutcome glp_decide(const Formula& f, const Budgets& b) {
  Formula h = Formula::imp(build_m_plus(f), f);
  JProver prover;
  auto out = alternate(h, b, [&](unsigned level, bool& exhausted) {
    auto d = prover.prove_glp(f, level);
    exhausted = prover.exhausted();
    return d;
  });
  out.system = System::GLP;
  if (out.verdict == Verdict::Proved) out.formula = f;
  return out;
}

DecisionOutcome entails(const std::vector<Formula>& a, const Formula& x, const Budgets& b) {
  return glp_decide(Formula::imp(conj_all(a), x), b);
}

std::string describe(const SampledReport& r) {
  std::ostringstream out;
  for (const auto& s : r.samples) {
    out << to_string(s.z) << ": ";
    if (s.from_b.verdict != Verdict::Proved) {
      out << "B does not prove it (" << to_string(s.from_b.verdict) << "), nothing to check";
    } else {
      out << "B proves it, A " << (s.from_a ? to_string(s.from_a->verdict) : "unchecked");
    }
    out << " -> " << (s.status == Verdict::Proved ? "pass" : s.status == Verdict::Refuted ? "fail" : "inconclusive")
        << '\n';
  }
  out << "overall (sampled): "
      << (r.overall == Verdict::Proved ? "pass" : r.overall == Verdict::Refuted ? "fail" : "inconclusive");
  if (r.witness) out << ", witness " << to_string(*r.witness);
  out << '\n';
  return out.str();
}

namespace {

// Shared by conservative_n and theorem_pi_check: goals[i] is checked
// against b first and a second.
SampledReport sampled(const std::vector<Formula>& a, const std::vector<Formula>& b, const std::vector<Formula>& zs,
                      const std::vector<Formula>& goals, const Budgets& budgets) {
  SampledReport r;
  bool inconclusive = false;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    SampleCheck s;
    s.z = zs[i];
    s.from_b = entails(b, goals[i], budgets);
    if (s.from_b.verdict == Verdict::Proved) {
      s.from_a = entails(a, goals[i], budgets);
      s.status = s.from_a->verdict;
    } else if (s.from_b.verdict == Verdict::Refuted) {
      s.status = Verdict::Proved;
    } else {
      s.status = Verdict::Unknown;
    }
    if (s.status == Verdict::Refuted && !r.witness) r.witness = s.z;
    if (s.status == Verdict::Unknown) inconclusive = true;
    r.samples.push_back(std::move(s));
  }
  r.overall = r.witness ? Verdict::Refuted : inconclusive ? Verdict::Unknown : Verdict::Proved;
  return r;
}

std::vector<Formula> q_terms(const Formula& x, Modality n, unsigned k_max) {
  std::vector<Formula> out;
  for (unsigned k = 0; k <= k_max; ++k) out.push_back(build_q(n, k, x));
  return out;
}

}  // namespace

SampledReport conservative_n(const std::vector<Formula>& a, const std::vector<Formula>& b, Modality n,
                             const std::vector<Formula>& z_samples, const Budgets& budgets) {
  std::vector<Formula> goals;
  for (const Formula& z : z_samples) goals.push_back(Formula::dia(n, z));
  return sampled(a, b, z_samples, goals, budgets);
}

ReductionWitness reduction_witness(const Formula& psi, const Formula& phi, Modality m, unsigned k_max,
                                   const Budgets& b) {
  ReductionWitness w;
  Formula goal = Formula::dia(m, phi);
  w.premise = glp_decide(Formula::imp(Formula::dia(m + 1, psi), goal), b);
  std::size_t d = std::max(modal_depth(psi), modal_depth(phi));
  Signature sp = signature(psi), sf = signature(phi);
  std::size_t v = sp.variables.size();
  for (const auto& x : sf.variables) v += sp.variables.count(x) ? 0 : 1;
  Modality r = std::max({m + 1, sp.max_modality.value_or(0), sf.max_modality.value_or(0)});
  BisimBound bound = bisim_class_bound(d, v, r);
  w.a_priori_bound = bound.to_string() + " + 1";
  if (w.premise.verdict != Verdict::Proved) {
    w.status = ReductionWitness::Status::PremiseNotEstablished;
    return w;
  }
  for (unsigned k = 0; k <= k_max; ++k) {
    w.attempts.push_back(glp_decide(Formula::imp(build_q(m, k, psi), goal), b));
    if (w.attempts.back().verdict == Verdict::Proved) {
      w.status = ReductionWitness::Status::Found;
      w.k = k;
      w.minimal = k == 0 || w.attempts[k - 1].verdict == Verdict::Refuted;
      // k <= N + 1
      w.within_bound = k == 0 || bound.at_least(boost::multiprecision::cpp_int(k - 1));
      return w;
    }
  }
  return w;
}

ReductionSuiteReport reduction_property_suite(const Formula& x, Modality n, unsigned k_max,
                                              const std::vector<Formula>& z_samples, const Budgets& b) {
  ReductionSuiteReport r;
  std::vector<Formula> a = q_terms(x, n, k_max);
  std::vector<Formula> top{Formula::dia(n + 1, x)};
  r.conservativity = conservative_n(a, top, n, z_samples, b);
  bool converse_ok = true;
  for (const Formula& q : a) {
    r.converse.push_back(entails(top, q, b));
    converse_ok = converse_ok && r.converse.back().verdict == Verdict::Proved;
  }
  r.passed = converse_ok && r.conservativity.overall == Verdict::Proved;
  return r;
}

SampledReport theorem_pi_check(const Formula& x, Modality n, const std::vector<Formula>& pi_samples, unsigned k_max,
                               const Budgets& b) {
  for (const Formula& z : pi_samples)
    if (!pi_class_member(z, n))
      throw std::invalid_argument("sample " + to_string(z) + " is not in the Pi_" + std::to_string(n + 1) + " class");
  std::vector<Formula> top{Formula::dia(n + 1, x)};
  return sampled(q_terms(x, n, k_max), top, pi_samples, pi_samples, b);
}

}  // namespace glpkit
