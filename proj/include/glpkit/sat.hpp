#pragma once

// A small DPLL solver (two watched literals, chronological backtracking)
// and a Tseitin encoder for the propositional skeleton of formulas.

#include <functional>
#include <unordered_map>
#include <vector>

#include "glpkit/formula.hpp"

namespace glpkit {

// Literals are non-zero ints: +v / -v for variable v >= 1.
class SatSolver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(assign_.size()) - 1; }
  void add_clause(std::vector<int> lits);
  bool solve();
  // Value of a variable in the last satisfying assignment.
  bool value(int var) const { return assign_.at(static_cast<std::size_t>(var)) > 0; }

 private:
  int lit_value(int lit) const;
  bool enqueue(int lit);
  bool propagate();
  std::size_t watch_index(int lit) const;

  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<std::size_t>> watches_;  // by literal: clauses watching it
  std::vector<int> assign_{0};                     // per var: -1, 0, +1
  std::vector<int> trail_;
  std::size_t qhead_ = 0;
  bool empty_clause_ = false;
};

// Maps the boolean structure of formulas onto solver variables.  Variables
// and modal formulas are atoms, resolved through the callback.
class TseitinEncoder {
 public:
  TseitinEncoder(SatSolver& solver, std::function<int(const Formula&)> atom)
      : solver_(solver), atom_(std::move(atom)) {}
  // Literal equivalent to f.
  int encode(const Formula& f);

 private:
  SatSolver& solver_;
  std::function<int(const Formula&)> atom_;
  std::unordered_map<Formula, int, FormulaHash> memo_;
  int true_lit_ = 0;
};

// Classical tautology with modal subformulas read as atoms.
bool is_tautology(const Formula& f);

}  // namespace glpkit
