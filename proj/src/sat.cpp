#include "glpkit/sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace glpkit {

int SatSolver::new_var() {
  assign_.push_back(0);
  watches_.resize(2 * assign_.size());
  return num_vars();
}

std::size_t SatSolver::watch_index(int lit) const {
  return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
}

int SatSolver::lit_value(int lit) const {
  int v = assign_[static_cast<std::size_t>(std::abs(lit))];
  return lit > 0 ? v : -v;
}

void SatSolver::add_clause(std::vector<int> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 0; i + 1 < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j)
      if (lits[i] == -lits[j]) return;  // tautological clause
  }
  if (lits.empty()) {
    empty_clause_ = true;
    return;
  }
  if (lits.size() == 1) lits.push_back(lits[0]);
  clauses_.push_back(std::move(lits));
  const auto& c = clauses_.back();
  watches_[watch_index(c[0])].push_back(clauses_.size() - 1);
  if (c[1] != c[0]) watches_[watch_index(c[1])].push_back(clauses_.size() - 1);
}

bool SatSolver::enqueue(int lit) {
  int v = lit_value(lit);
  if (v > 0) return true;
  if (v < 0) return false;
  assign_[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
  trail_.push_back(lit);
  return true;
}

// Returns false on conflict.
bool SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    int lit = trail_[qhead_++];
    int falsified = -lit;
    auto& ws = watches_[watch_index(falsified)];
    for (std::size_t k = 0; k < ws.size();) {
      auto& c = clauses_[ws[k]];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      // Now c[1] is the falsified watch (or both watches coincide for units).
      if (c[0] == c[1]) {
        if (!enqueue(c[0])) return false;
        ++k;
        continue;
      }
      if (lit_value(c[0]) > 0) {
        ++k;
        continue;
      }
      bool moved = false;
      for (std::size_t t = 2; t < c.size(); ++t) {
        if (lit_value(c[t]) >= 0) {
          std::swap(c[1], c[t]);
          watches_[watch_index(c[1])].push_back(ws[k]);
          ws[k] = ws.back();
          ws.pop_back();
          moved = true;
          break;
        }
      }
      if (moved) continue;
      if (!enqueue(c[0])) return false;
      ++k;
    }
  }
  return true;
}

bool SatSolver::solve() {
  if (empty_clause_) return false;
  std::fill(assign_.begin(), assign_.end(), 0);
  trail_.clear();
  qhead_ = 0;
  // Unit clauses are stored with a repeated literal.
  for (const auto& c : clauses_)
    if (c[0] == c[1] && !enqueue(c[0])) return false;

  struct Decision {
    std::size_t trail_size;
    int lit;
    bool flipped;
  };
  std::vector<Decision> stack;
  int next_var = 1;
  while (true) {
    if (!propagate()) {
      // Backtrack to the latest unflipped decision.
      while (!stack.empty() && stack.back().flipped) {
        auto d = stack.back();
        stack.pop_back();
        while (trail_.size() > d.trail_size) {
          assign_[static_cast<std::size_t>(std::abs(trail_.back()))] = 0;
          trail_.pop_back();
        }
      }
      if (stack.empty()) return false;
      auto& d = stack.back();
      while (trail_.size() > d.trail_size) {
        assign_[static_cast<std::size_t>(std::abs(trail_.back()))] = 0;
        trail_.pop_back();
      }
      qhead_ = trail_.size();
      d.flipped = true;
      d.lit = -d.lit;
      enqueue(d.lit);
      next_var = 1;
      continue;
    }
    while (next_var <= num_vars() && assign_[static_cast<std::size_t>(next_var)] != 0) ++next_var;
    if (next_var > num_vars()) return true;
    stack.push_back({trail_.size(), -next_var, false});
    enqueue(-next_var);
  }
}

// ---------------------------------------------------------------------------

int TseitinEncoder::encode(const Formula& f) {
  if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  int out = 0;
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
      if (!true_lit_) {
        true_lit_ = solver_.new_var();
        solver_.add_clause({true_lit_});
      }
      out = f.is(Op::Top) ? true_lit_ : -true_lit_;
      break;
    case Op::Var:
    case Op::Box:
    case Op::Dia:
      out = atom_(f);
      break;
    case Op::Not:
      out = -encode(f.lhs());
      break;
    case Op::And:
    case Op::Or:
    case Op::Imp: {
      int a = encode(f.lhs());
      int b = encode(f.rhs());
      if (f.is(Op::Imp)) a = -a;
      int g = solver_.new_var();
      if (f.is(Op::And)) {
        solver_.add_clause({-g, a});
        solver_.add_clause({-g, b});
        solver_.add_clause({g, -a, -b});
      } else {
        solver_.add_clause({-g, a, b});
        solver_.add_clause({g, -a});
        solver_.add_clause({g, -b});
      }
      out = g;
      break;
    }
  }
  memo_.emplace(f, out);
  return out;
}

bool is_tautology(const Formula& f) {
  SatSolver s;
  std::unordered_map<Formula, int, FormulaHash> atoms;
  TseitinEncoder enc(s, [&](const Formula& a) {
    auto [it, fresh] = atoms.emplace(a, 0);
    if (fresh) it->second = s.new_var();
    return it->second;
  });
  s.add_clause({-enc.encode(f)});
  return !s.solve();
}

}  // namespace glpkit
