#include "glpkit/space.hpp"

#include <stdexcept>

namespace glpkit {

namespace {

Ordinal omega_times(std::uint64_t k, std::uint64_t plus = 0) {
  return add(Ordinal::omega_power(Ordinal(1), k), Ordinal(plus));
}

// (x, L)
OrdSet above(const Ordinal& bound, const Ordinal& x) { return OrdSet::interval(bound, successor(x), bound); }

void require_n(int n) {
  if (n != 0 && n != 1) throw std::invalid_argument("topology index must be 0 or 1");
}

}  // namespace

OrdSet d0(const OrdSet& a) {
  auto m = a.min();
  if (!m) return OrdSet::empty(a.bound());
  return above(a.bound(), *m);
}

OrdSet d1(const OrdSet& a) {
  // Limit points of the multiples of w^e in [lo, hi) are the multiples of
  // w^(e+1) in (lo, hi].
  std::vector<ScaledInterval> out;
  for (const auto& p : a.pieces()) {
    Ordinal e = successor(p.scale);
    Ordinal lo = round_up_to_multiple(successor(p.lo), e);
    Ordinal hi = round_up_to_multiple(successor(p.hi), e);
    if (lo < hi) out.push_back(ScaledInterval{e, lo, hi});
  }
  return OrdSet(a.bound(), std::move(out));
}

OrdSet derive(const OrdSet& a, int n) {
  require_n(n);
  return n == 0 ? d0(a) : d1(a);
}

OrdSet closure(const OrdSet& a, int n) { return set_union(a, derive(a, n)); }

bool member_d0(const OrdSet& a, const Ordinal& x) {
  auto m = a.min();
  return x < a.bound() && m && *m < x;
}

bool member_d1(const OrdSet& a, const Ordinal& x) {
  if (!(x < a.bound()) || !x.is_limit()) return false;
  OrdSet below = set_intersect(a, OrdSet::interval(a.bound(), Ordinal(), x));
  if (below.is_empty()) return false;
  // The elements below x reach up to x without a largest one.
  const ScaledInterval& last = below.pieces().back();
  return last.hi == x && last.scale < x.smallest_exponent();
}

std::optional<OrdSet> DerivativeTrace::at(const Ordinal& label) const {
  for (const auto& s : stages)
    if (s.label == label) return s.value;
  return std::nullopt;
}

std::string to_string(DerivativeTrace::Terminal t) {
  switch (t) {
    case DerivativeTrace::Terminal::Empty: return "empty";
    case DerivativeTrace::Terminal::Fixpoint: return "fixpoint";
    default: return "cap-reached";
  }
}

namespace {

// Closed form for n = 0.
OrdSet d0_stage(const OrdSet& a, const Ordinal& s) {
  const Ordinal& bound = a.bound();
  if (s.is_zero()) return OrdSet::whole(bound);
  if (s.is_successor()) {
    auto e = a.element_at(predecessor(s));
    return e ? above(bound, *e) : OrdSet::empty(bound);
  }
  // Below a limit s the elements a_t, t < s, have no largest one.
  auto sup = a.sup_before(s);
  return sup ? OrdSet::interval(bound, *sup, bound) : OrdSet::empty(bound);
}

DerivativeTrace iterate_d0(const OrdSet& a, std::optional<Ordinal> stage, unsigned cap) {
  DerivativeTrace t;
  Ordinal limit = omega_times(cap);
  Ordinal target;
  if (stage) {
    target = *stage;
    if (target > limit) throw std::invalid_argument("stage beyond w*" + std::to_string(cap));
  } else {
    // d0^(ot+1)[A] is empty, ot the order type of A.
    target = successor(a.order_type());
    if (target > limit) target = limit;
  }
  // List the stages w*j + k for small k, then the target itself.
  std::uint64_t listed = 4;
  std::vector<Ordinal> labels;
  for (std::uint64_t j = 0; j <= cap; ++j) {
    for (std::uint64_t k = 0; k <= listed; ++k) {
      Ordinal l = omega_times(j, k);
      if (l > target) break;
      labels.push_back(l);
    }
    if (omega_times(j + 1) > target) break;
  }
  if (labels.empty() || labels.back() != target) {
    // Just below the target when it is a successor, to show the last step.
    if (target.is_successor() && (labels.empty() || labels.back() < predecessor(target)))
      labels.push_back(predecessor(target));
    labels.push_back(target);
  }
  for (const Ordinal& l : labels) {
    t.stages.push_back({l, d0_stage(a, l)});
    std::size_t k = t.stages.size();
    if (t.stages.back().value.is_empty()) {
      t.terminal = DerivativeTrace::Terminal::Empty;
      if (!stage) return t;
    } else if (k >= 2 && successor(t.stages[k - 2].label) == l && t.stages[k - 2].value == t.stages[k - 1].value) {
      t.terminal = DerivativeTrace::Terminal::Fixpoint;
      if (!stage) return t;
    } else {
      t.terminal = DerivativeTrace::Terminal::CapReached;
    }
  }
  return t;
}

DerivativeTrace iterate_d1(const OrdSet& a, std::optional<Ordinal> stage, unsigned cap) {
  DerivativeTrace t;
  std::optional<std::uint64_t> finite_target;
  if (stage) {
    if (stage->is_finite()) finite_target = stage->to_natural();
    else if (*stage > omega_times(cap)) throw std::invalid_argument("stage beyond w*" + std::to_string(cap));
  }
  OrdSet cur = OrdSet::whole(a.bound());
  t.stages.push_back({Ordinal(), cur});
  std::uint64_t steps = finite_target.value_or(cap);
  for (std::uint64_t k = 1; k <= steps; ++k) {
    OrdSet next = d1(set_intersect(cur, a));
    bool repeat = next == cur;
    if (!repeat || finite_target) t.stages.push_back({Ordinal(k), next});
    if (next.is_empty() && !repeat) {
      t.terminal = DerivativeTrace::Terminal::Empty;
      if (!finite_target) return t;
    }
    if (repeat) {
      t.terminal = cur.is_empty() ? DerivativeTrace::Terminal::Empty : DerivativeTrace::Terminal::Fixpoint;
      if (!finite_target) break;
    }
    cur = std::move(next);
  }
  if (finite_target) {
    if (t.stages.back().value.is_empty()) t.terminal = DerivativeTrace::Terminal::Empty;
    else if (t.terminal != DerivativeTrace::Terminal::Fixpoint) t.terminal = DerivativeTrace::Terminal::CapReached;
    return t;
  }
  if (stage) {
    // A limit stage: the value is known only past a fixpoint.
    if (t.terminal == DerivativeTrace::Terminal::CapReached) return t;
    t.stages.push_back({*stage, t.stages.back().value});
  }
  return t;
}

}  // namespace

DerivativeTrace iterate_d(const OrdSet& a, int n, std::optional<Ordinal> stage, unsigned cap) {
  require_n(n);
  return n == 0 ? iterate_d0(a, stage, cap) : iterate_d1(a, stage, cap);
}

DerivativeTrace cb_sequence(const Ordinal& bound, int n, unsigned cap) {
  return iterate_d(OrdSet::whole(bound), n, std::nullopt, cap);
}

bool conservative_n_sets(const OrdSet& a, const OrdSet& b, int n) {
  return is_subset(closure(a, n), closure(b, n)) || !is_subset(b, derive(OrdSet::whole(b.bound()), n));
}

WeakReductionReport weak_reduction_check(const OrdSet& a) {
  WeakReductionReport r;
  r.lhs = closure(d1(a), 0);
  r.rhs = d0_stage(a, Ordinal::omega());
  r.equal = r.lhs == r.rhs;
  r.entails = conservative_n_sets(r.rhs, d1(a), 0);
  return r;
}

CompactnessReport compactness_stage_check(const OrdSet& a, const OrdSet& b, unsigned cap) {
  CompactnessReport r;
  r.compact = a.bound().is_successor();
  OrdSet db = d0(b);
  r.limit_holds = is_subset(d0_stage(a, Ordinal::omega()), db);
  for (unsigned k = 0; k <= cap; ++k) {
    if (is_subset(d0_stage(a, Ordinal(k)), db)) {
      r.finite_stage = k;
      break;
    }
  }
  r.agree = r.limit_holds == r.finite_stage.has_value();
  r.ok = r.agree || !r.compact;
  return r;
}

std::vector<Ordinal> probe_grid(unsigned max_coef) {
  std::vector<Ordinal> out;
  for (unsigned a = 0; a <= max_coef; ++a)
    for (unsigned b = 0; b <= max_coef; ++b)
      for (unsigned c = 0; c <= max_coef; ++c)
        out.push_back(add(add(Ordinal::omega_power(Ordinal(2), a), Ordinal::omega_power(Ordinal(1), b)), Ordinal(c)));
  return out;
}

std::vector<ProbeMismatch> probe_check_serial(const OrdSet& s, const PointPredicate& pointwise,
                                              const std::vector<Ordinal>& grid) {
  std::vector<ProbeMismatch> out;
  for (const Ordinal& x : grid) {
    bool sym = s.contains(x), pw = pointwise(x);
    if (sym != pw) out.push_back({x, sym, pw});
  }
  return out;
}

std::vector<ProbeMismatch> probe_check_parallel(const OrdSet& s, const PointPredicate& pointwise,
                                                const std::vector<Ordinal>& grid) {
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<signed char> sym(grid.size()), pw(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto u = static_cast<std::size_t>(i);
    sym[u] = s.contains(grid[u]);
    pw[u] = pointwise(grid[u]);
  }
  std::vector<ProbeMismatch> out;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (sym[i] != pw[i]) out.push_back({grid[i], sym[i] != 0, pw[i] != 0});
  return out;
}

}  // namespace glpkit
