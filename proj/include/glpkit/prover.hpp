#pragma once

// Proof search for J, emitting Hilbert derivations.
//
// The search works on formulas without diamonds.  A SAT solver looks for a
// boolean assignment to variables and top-level boxes that refutes the goal.
// For a false [n]A it tries the premise obtained by stepping to an R_n-maximal
// counterexample y: at y hold B, [n]B and [u]B (n < u <= r) for every true
// [n]B, the true and false boxes of lower index, and [n]A (Loeb).  A proved
// premise becomes a lemma clause and the assignment is excluded.

#include <atomic>
#include <cstddef>
#include <optional>
#include <unordered_map>

#include "glpkit/derivation.hpp"

namespace glpkit {

class JProver {
 public:
  // max_steps bounds the number of SAT calls over the prover's lifetime.
  explicit JProver(std::size_t max_steps = 200000, const std::atomic<bool>* stop = nullptr)
      : max_steps_(max_steps), stop_(stop) {}

  // A derivation of f in J found with nesting depth <= depth, if any.
  std::optional<Derivation> prove(const Formula& f, unsigned depth);
  // A derivation of f in GLP, through a J-derivation of M+(f) -> f.
  std::optional<Derivation> prove_glp(const Formula& f, unsigned depth);

  bool exhausted() const { return exhausted_; }

 private:
  struct Abort {};
  std::optional<std::size_t> prove_line(const Formula& f, unsigned depth);
  std::optional<std::size_t> search(const Formula& g, unsigned depth);
  std::size_t lemma(Modality n, const Formula& a, const std::vector<Formula>& true_boxes,
                    const std::vector<Formula>& false_low, Modality r, std::size_t premise_line);
  std::pair<std::size_t, std::size_t> diamond_bridge(const Formula& g);
  std::size_t m_plus_line(const Formula& f);

  DerivationBuilder b_;
  std::unordered_map<Formula, unsigned, FormulaHash> failed_;  // largest failed depth
  Modality r_ = 0;
  std::size_t steps_ = 0;
  std::size_t max_steps_;
  const std::atomic<bool>* stop_;
  bool exhausted_ = false;
};

}  // namespace glpkit
