#pragma once

// Decision procedures with certificates.  Proof search and countermodel
// search alternate with growing budgets: proof depth L, then models with
// exactly L nodes, for L = 1, 2, ...

#include <optional>
#include <string>
#include <vector>

#include "glpkit/derivation.hpp"
#include "glpkit/jmodel.hpp"

namespace glpkit {

enum class Verdict { Proved, Refuted, Unknown };
std::string to_string(Verdict v);

struct Budgets {
  unsigned proof = 12;  // nesting depth of the proof search
  unsigned model = 6;   // largest countermodel size
  bool parallel = true;
  // Defaults scaled by GLPKIT_BUDGET_SCALE when set.
  static Budgets defaults();
};

struct DecisionOutcome {
  Verdict verdict = Verdict::Unknown;
  System system = System::J;
  Formula formula;  // what the certificate is about: proved, or false at node
  std::optional<Derivation> proof;
  std::optional<JModel> model;
  NodeId node = 0;
};

// Re-checks the certificate: the derivation under check_derivation, or the
// model under validate_frame plus evaluation.  Unknown never verifies.
bool verify(const DecisionOutcome& o);

DecisionOutcome j_decide(const Formula& f, const Budgets& b = Budgets::defaults());
// Via J-validity of M+(f) -> f.  Refutations are models of ~(M+(f) -> f);
// proofs are GLP derivations of f itself.
DecisionOutcome glp_decide(const Formula& f, const Budgets& b = Budgets::defaults());
// glp_decide(/\A -> x).
DecisionOutcome entails(const std::vector<Formula>& a, const Formula& x, const Budgets& b = Budgets::defaults());

// Sampled check of "B |- <n>z implies A |- <n>z".
struct SampleCheck {
  Formula z;
  DecisionOutcome from_b;
  std::optional<DecisionOutcome> from_a;  // only when from_b is Proved
  Verdict status = Verdict::Unknown;      // Proved = pass, Refuted = fail
};
struct SampledReport {
  std::vector<SampleCheck> samples;
  Verdict overall = Verdict::Unknown;  // Proved = pass, Refuted = fail, Unknown = inconclusive
  std::optional<Formula> witness;      // first failing sample
};
std::string describe(const SampledReport& r);

SampledReport conservative_n(const std::vector<Formula>& a, const std::vector<Formula>& b, Modality n,
                             const std::vector<Formula>& z_samples, const Budgets& budgets = Budgets::defaults());

// Least k <= k_max with GLP |- Q^k_m(psi) -> <m>phi, once
// GLP |- <m+1>psi -> <m>phi is established.
struct ReductionWitness {
  enum class Status { Found, PremiseNotEstablished, NotFound } status = Status::NotFound;
  DecisionOutcome premise;
  std::optional<unsigned> k;
  std::vector<DecisionOutcome> attempts;  // index k
  bool minimal = false;                   // attempt at k-1 Refuted (k = 0 trivially)
  std::string a_priori_bound;             // bisim_class_bound(d, v, r) + 1
  bool within_bound = false;
};
ReductionWitness reduction_witness(const Formula& psi, const Formula& phi, Modality m, unsigned k_max,
                                   const Budgets& b = Budgets::defaults());

struct ReductionSuiteReport {
  SampledReport conservativity;
  std::vector<DecisionOutcome> converse;  // <n+1>x |- Q^k_n(x), k = 0..k_max
  bool passed = false;
};
ReductionSuiteReport reduction_property_suite(const Formula& x, Modality n, unsigned k_max,
                                              const std::vector<Formula>& z_samples,
                                              const Budgets& b = Budgets::defaults());

// For each sample z in the Pi_{n+1} class: <n+1>x |- z must imply
// {Q^k_n(x) : k <= k_max} |- z.  Throws std::invalid_argument on samples
// outside the class.
SampledReport theorem_pi_check(const Formula& x, Modality n, const std::vector<Formula>& pi_samples, unsigned k_max,
                               const Budgets& b = Budgets::defaults());

}  // namespace glpkit
