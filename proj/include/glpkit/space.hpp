#pragma once

// The ordinal GLP-space [0, L) with the left topology (n = 0) and the order
// topology (n = 1).  Sets are OrdSets; the space is their bound.
//
//   d0(A) = { a < L : some b in A has b < a }
//   d1(A) = { a < L : a is a limit and sup(A & a) = a }

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glpkit/ordset.hpp"

namespace glpkit {

OrdSet d0(const OrdSet& a);
OrdSet d1(const OrdSet& a);
OrdSet derive(const OrdSet& a, int n);
// A | d_n(A)
OrdSet closure(const OrdSet& a, int n);

// Pointwise membership, computed per point without building the derived set.
bool member_d0(const OrdSet& a, const Ordinal& x);
bool member_d1(const OrdSet& a, const Ordinal& x);

struct Stage {
  Ordinal label;
  OrdSet value;
};

struct DerivativeTrace {
  enum class Terminal { Empty, Fixpoint, CapReached } terminal = Terminal::CapReached;
  std::vector<Stage> stages;  // increasing labels; the last one is the answer
  const OrdSet& last() const { return stages.back().value; }
  // Value at a listed stage.
  std::optional<OrdSet> at(const Ordinal& label) const;
};
std::string to_string(DerivativeTrace::Terminal t);

// d_n^0[A] = X, d_n^(s+1)[A] = d_n(d_n^s[A] & A), intersections at limits.
// With a target stage the trace ends there; without one it runs until the
// value is empty or repeats.  Stages are limited to w*cap.  For n = 0 every
// stage is computed in closed form: d0^(s+1)[A] = (a_s, L) with a_s the s-th
// element of A, and d0^l[A] = [sup of the first l elements, L) at limits.
// For n = 1 only finite stages are computed; a limit target is answered
// once a fixpoint has been reached and reported as CapReached otherwise.
DerivativeTrace iterate_d(const OrdSet& a, int n, std::optional<Ordinal> stage = std::nullopt, unsigned cap = 64);

// The Cantor-Bendixson sequence of the whole space.
DerivativeTrace cb_sequence(const Ordinal& bound, int n, unsigned cap = 64);

// c_n(A) <= c_n(B) or B is not contained in d_n(X).
bool conservative_n_sets(const OrdSet& a, const OrdSet& b, int n);

struct WeakReductionReport {
  OrdSet lhs;  // c0(d1(A))
  OrdSet rhs;  // d0^w[A]
  bool equal = false;
  bool entails = false;  // d0^w[A] |-_0 d1(A)
};
WeakReductionReport weak_reduction_check(const OrdSet& a);

struct CompactnessReport {
  bool compact = false;                   // L is a successor
  bool limit_holds = false;               // d0^w[A] <= d0(B)
  std::optional<unsigned> finite_stage;   // least k <= cap with d0^k[A] <= d0(B)
  bool agree = false;
  bool ok = false;                        // agree, or not compact
};
CompactnessReport compactness_stage_check(const OrdSet& a, const OrdSet& b, unsigned cap = 64);

// {w^2*a + w*b + c : a, b, c <= max_coef} in increasing order.
std::vector<Ordinal> probe_grid(unsigned max_coef = 5);

struct ProbeMismatch {
  Ordinal point;
  bool symbolic = false;
  bool pointwise = false;
};
using PointPredicate = std::function<bool(const Ordinal&)>;
// Points of the grid where set membership and the predicate disagree, in
// grid order.  The parallel version splits the grid across threads.
std::vector<ProbeMismatch> probe_check_serial(const OrdSet& s, const PointPredicate& pointwise,
                                              const std::vector<Ordinal>& grid);
std::vector<ProbeMismatch> probe_check_parallel(const OrdSet& s, const PointPredicate& pointwise,
                                                const std::vector<Ordinal>& grid);

}  // namespace glpkit
