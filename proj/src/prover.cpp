#include "glpkit/prover.hpp"

#include <algorithm>
#include <map>

#include "glpkit/sat.hpp"

namespace glpkit {

namespace {

// The premise formula P' -> ([n]A -> A) for the step through [n]A.
struct Premise {
  enum class Kind { Plain, Four, Up, In, NegLow };
  std::vector<Formula> parts;  // conjuncts of P'
  std::vector<Kind> kinds;
  Formula formula;
  void add(Formula f, Kind k) {
    parts.push_back(std::move(f));
    kinds.push_back(k);
  }
};

Premise premise(Modality n, const Formula& a, const std::vector<Formula>& true_boxes,
                const std::vector<Formula>& false_low, Modality r) {
  Premise p;
  for (const Formula& t : true_boxes) {
    Modality i = t.index();
    const Formula& b = t.lhs();
    if (i == n) {
      p.add(b, Premise::Kind::Plain);
      p.add(t, Premise::Kind::Four);
      for (Modality u = n + 1; u <= r; ++u) p.add(Formula::box(u, b), Premise::Kind::In);
    } else if (i < n) {
      p.add(t, Premise::Kind::Up);
    }
  }
  for (const Formula& c : false_low) p.add(Formula::neg(c), Premise::Kind::NegLow);
  Formula na = Formula::box(n, a);
  p.formula = Formula::imp(conj_all(p.parts), Formula::imp(na, a));
  return p;
}

Formula lemma_antecedent(Modality n, const std::vector<Formula>& true_boxes, const std::vector<Formula>& false_low) {
  std::vector<Formula> parts;
  for (const Formula& t : true_boxes)
    if (t.index() <= n) parts.push_back(t);
  for (const Formula& c : false_low) parts.push_back(Formula::neg(c));
  return conj_all(parts);
}

}  // namespace

std::optional<std::size_t> JProver::search(const Formula& g, unsigned depth) {
  if (auto l = b_.find(g)) return l;
  if (auto it = failed_.find(g); it != failed_.end() && it->second >= depth) return std::nullopt;

  std::vector<std::size_t> lemmas;
  while (true) {
    if (++steps_ > max_steps_ || (stop_ && stop_->load(std::memory_order_relaxed))) {
      exhausted_ = true;
      throw Abort{};
    }
    SatSolver s;
    std::map<int, Formula> boxes;  // var -> box atom, in creation order
    std::unordered_map<Formula, int, FormulaHash> atoms;
    TseitinEncoder enc(s, [&](const Formula& a) {
      auto [it, fresh] = atoms.emplace(a, 0);
      if (fresh) {
        it->second = s.new_var();
        if (a.is(Op::Box)) boxes.emplace(it->second, a);
      }
      return it->second;
    });
    s.add_clause({-enc.encode(g)});
    for (std::size_t l : lemmas) s.add_clause({enc.encode(b_.formula(l))});
    if (!s.solve()) return b_.taut_from(lemmas, g);
    if (depth == 0) break;

    std::vector<Formula> true_boxes, false_boxes;
    for (const auto& [v, f] : boxes) (s.value(v) ? true_boxes : false_boxes).push_back(f);

    bool progressed = false;
    for (const Formula& target : false_boxes) {
      Modality n = target.index();
      std::vector<Formula> false_low;
      for (const Formula& c : false_boxes)
        if (c.index() < n) false_low.push_back(c);
      Premise p = premise(n, target.lhs(), true_boxes, false_low, r_);
      auto pl = search(p.formula, depth - 1);
      if (!pl) continue;
      lemmas.push_back(lemma(n, target.lhs(), true_boxes, false_low, r_, *pl));
      progressed = true;
      break;
    }
    if (!progressed) break;
  }
  auto& f = failed_[g];
  f = std::max(f, depth);
  return std::nullopt;
}

// From the premise line derive P -> [n]A, P the lemma antecedent.
std::size_t JProver::lemma(Modality n, const Formula& a, const std::vector<Formula>& true_boxes,
                           const std::vector<Formula>& false_low, Modality r, std::size_t premise_line) {
  Premise pr = premise(n, a, true_boxes, false_low, r);
  Formula p = lemma_antecedent(n, true_boxes, false_low);
  Formula na = Formula::box(n, a);
  Formula target = Formula::imp(p, na);
  if (auto l = b_.find(target)) return *l;

  std::size_t bm = b_.box_mono(n, premise_line);  // [n]P' -> [n]([n]A -> A)
  std::size_t lob = b_.axiom("lob", Formula::imp(Formula::box(n, Formula::imp(na, a)), na));

  std::vector<std::size_t> parts;
  for (std::size_t k = 0; k < pr.parts.size(); ++k) {
    const Formula& x = pr.parts[k];
    Formula goal = Formula::imp(p, Formula::box(n, x));
    switch (pr.kinds[k]) {
      case Premise::Kind::Plain:
        parts.push_back(b_.taut_from({}, goal));
        break;
      case Premise::Kind::Four:
        parts.push_back(b_.taut_from({b_.four(n, x.lhs())}, goal));
        break;
      case Premise::Kind::Up:
        parts.push_back(b_.taut_from({b_.axiom("box-up", Formula::imp(x, Formula::box(n, x)))}, goal));
        break;
      case Premise::Kind::In: {
        Formula src = Formula::box(n, x.lhs());
        parts.push_back(b_.taut_from({b_.axiom("box-in", Formula::imp(src, Formula::box(n, x)))}, goal));
        break;
      }
      case Premise::Kind::NegLow: {
        // ~[m]C with m < n
        Modality m = x.lhs().index();
        Formula c = x.lhs().lhs();
        std::size_t l1 = b_.neg_box_to_dia(m, c);
        Formula d = Formula::dia(m, Formula::neg(c));
        std::size_t l2 = b_.axiom("dia-up", Formula::imp(d, Formula::box(n, d)));
        std::size_t l3 = b_.dia_to_neg_box(m, c);
        std::size_t l4 = b_.box_mono(n, l3);
        parts.push_back(b_.taut_from({l1, l2, l4}, goal));
        break;
      }
    }
  }
  std::size_t bc = b_.box_conj(n, p, parts);  // P -> [n]P'
  return b_.taut_from({bc, bm, lob}, target);
}

// Lines for g' -> g and g -> g', g' = eliminate_diamonds(g).
std::pair<std::size_t, std::size_t> JProver::diamond_bridge(const Formula& g) {
  Formula e = eliminate_diamonds(g);
  auto both = [&](const Formula& x, const Formula& y) {
    std::size_t to = b_.taut_from({}, Formula::imp(x, y));
    return std::pair{to, b_.taut_from({}, Formula::imp(y, x))};
  };
  if (e == g) return both(e, g);
  switch (g.op()) {
    case Op::Not: {
      auto [to, from] = diamond_bridge(g.lhs());
      return {b_.taut_from({from}, Formula::imp(e, g)), b_.taut_from({to}, Formula::imp(g, e))};
    }
    case Op::And:
    case Op::Or:
    case Op::Imp: {
      auto [t1, f1] = diamond_bridge(g.lhs());
      auto [t2, f2] = diamond_bridge(g.rhs());
      return {b_.taut_from({t1, f1, t2, f2}, Formula::imp(e, g)), b_.taut_from({t1, f1, t2, f2}, Formula::imp(g, e))};
    }
    case Op::Box: {
      auto [to, from] = diamond_bridge(g.lhs());
      return {b_.box_mono(g.index(), to), b_.box_mono(g.index(), from)};
    }
    case Op::Dia: {
      Modality i = g.index();
      const Formula& x = g.lhs();
      Formula xe = eliminate_diamonds(x);
      auto [to, from] = diamond_bridge(x);  // xe -> x, x -> xe
      Formula nx = Formula::neg(x), nxe = Formula::neg(xe);
      // ~[i]~xe -> <i>x
      std::size_t n1 = b_.taut_from({to}, Formula::imp(nx, nxe));
      std::size_t b1 = b_.box_mono(i, n1);
      std::size_t d1 = b_.axiom("dual", Formula::imp(Formula::neg(Formula::box(i, nx)), g));
      std::size_t l1 = b_.taut_from({b1, d1}, Formula::imp(e, g));
      // <i>x -> ~[i]~xe
      std::size_t n2 = b_.taut_from({from}, Formula::imp(nxe, nx));
      std::size_t b2 = b_.box_mono(i, n2);
      std::size_t d2 = b_.axiom("dual", Formula::imp(g, Formula::neg(Formula::box(i, nx))));
      std::size_t l2 = b_.taut_from({b2, d2}, Formula::imp(g, e));
      return {l1, l2};
    }
    default:
      return both(e, g);
  }
}

std::optional<std::size_t> JProver::prove_line(const Formula& f, unsigned depth) {
  if (auto l = b_.find(f)) return l;
  r_ = signature(f).max_modality.value_or(0);
  Formula e = eliminate_diamonds(f);
  std::optional<std::size_t> line;
  try {
    line = search(e, depth);
  } catch (const Abort&) {
    return std::nullopt;
  }
  if (!line) return std::nullopt;
  if (e == f) return line;
  auto [to, from] = diamond_bridge(f);
  (void)from;
  return b_.mp(to, *line);
}

std::optional<Derivation> JProver::prove(const Formula& f, unsigned depth) {
  auto line = prove_line(f, depth);
  if (!line) return std::nullopt;
  return slice(b_.get(), *line);
}

// M+(f), derived in GLP.
std::size_t JProver::m_plus_line(const Formula& f) {
  Formula m = build_m(f);
  std::vector<Formula> conjuncts;
  std::vector<Formula> todo{m};
  while (!todo.empty()) {
    Formula c = todo.back();
    todo.pop_back();
    if (c.is(Op::And)) {
      todo.push_back(c.rhs());
      todo.push_back(c.lhs());
    } else {
      conjuncts.push_back(c);
    }
  }
  std::vector<std::size_t> lines;
  for (const Formula& c : conjuncts) {
    if (!c.is(Op::Imp)) continue;  // T
    Modality i = c.lhs().index(), j = c.rhs().index();
    const Formula& theta = c.lhs().lhs();
    Formula nt = Formula::neg(theta);
    std::size_t mono = b_.axiom("mono", Formula::imp(Formula::dia(j, nt), Formula::dia(i, nt)));
    std::size_t l1 = b_.neg_box_to_dia(j, theta);
    std::size_t l2 = b_.dia_to_neg_box(i, theta);
    lines.push_back(b_.taut_from({l1, mono, l2}, c));
  }
  std::size_t ml = b_.taut_from(lines, m);
  Formula mp = build_m_plus(f);
  if (mp == m) return ml;
  std::vector<std::size_t> boxed{ml};
  Modality r = signature(f).max_modality.value_or(0);
  for (Modality i = 0; i <= r; ++i) boxed.push_back(b_.nec(i, ml));
  return b_.taut_from(boxed, mp);
}

std::optional<Derivation> JProver::prove_glp(const Formula& f, unsigned depth) {
  Formula h = Formula::imp(build_m_plus(f), f);
  auto hl = prove_line(h, depth);
  if (!hl) return std::nullopt;
  std::size_t ml = m_plus_line(f);
  std::size_t fl = b_.mp(*hl, ml);
  return slice(b_.get(), fl);
}

}  // namespace glpkit
