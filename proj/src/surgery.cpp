#include "glpkit/surgery.hpp"

#include <algorithm>

namespace glpkit {

Formula reduction_premise(Modality m, const Formula& psi, const Formula& phi) {
  return Formula::imp(Formula::dia(m + 1, psi), Formula::dia(m, phi));
}

SurgeryResult surgery(const JModel& w, Modality m, const Formula& psi, const Formula& phi, unsigned k) {
  auto violations = validate_frame(w);
  if (!violations.empty())
    throw SurgeryError(SurgeryFailure::InvalidFrame,
                       "input is not a J-frame: " + violations.front().condition + " " + violations.front().detail);
  auto root = hereditary_root(w);
  if (!root) throw SurgeryError(SurgeryFailure::NoRoot, "input model has no hereditary root");

  SurgeryResult res;
  res.root = *root;
  Evaluator ev(w);
  Formula f = reduction_premise(m, psi, phi);
  const Formula mplus = build_m_plus(f);
  const std::string at = " at root " + w.name(*root);
  if (!ev.at(*root, mplus)) throw SurgeryError(SurgeryFailure::PremiseFalse, "M+(" + to_string(f) + ") fails" + at);
  if (!ev.at(*root, build_q(m, k, psi)))
    throw SurgeryError(SurgeryFailure::PremiseFalse, to_string(build_q(m, k, psi)) + " fails" + at);
  if (ev.at(*root, Formula::dia(m, phi)))
    throw SurgeryError(SurgeryFailure::PremiseFalse, to_string(Formula::dia(m, phi)) + " holds" + at);

  res.depth = std::max(modal_depth(phi), modal_depth(psi));
  Partition part = bisim_classes(w, res.depth);
  res.classes = part.blocks.size();
  if (k <= res.classes)
    throw SurgeryError(SurgeryFailure::KTooSmall, "k = " + std::to_string(k) + " does not exceed the " +
                                                      std::to_string(res.classes) + " classes of ~" +
                                                      std::to_string(res.depth) + "; pigeonhole needs more");

  // Chain 0 R_m a_{k-1} R_m ... R_m a_0 with a_i |= psi & Q^i(psi), first successor in node order.
  res.chain.assign(k, 0);
  NodeId cur = *root;
  for (unsigned step = k; step-- > 0;) {
    Formula want = Formula::conj(psi, build_q(m, step, psi));
    const auto& succ = w.successors(m, cur);
    auto it = std::find_if(succ.begin(), succ.end(), [&](NodeId y) { return ev.at(y, want); });
    if (it == succ.end())
      throw SurgeryError(SurgeryFailure::ChainTooShort, "no R" + std::to_string(m) + "-successor of " + w.name(cur) +
                                                            " forces " + to_string(want));
    res.chain[step] = *it;
    cur = *it;
  }

  bool found = false;
  for (std::size_t i = 1; i < k && !found; ++i) {
    for (std::size_t j = 0; j < i && !found; ++j) {
      if (part.block_of[res.chain[i]] == part.block_of[res.chain[j]]) {
        res.i = i;
        res.j = j;
        found = true;
      }
    }
  }
  if (!found) throw SurgeryError(SurgeryFailure::NoRepeatedPair, "no two chain elements are ~d-equivalent");

  NodeId a = res.chain[res.i];
  res.alpha = plane(w, a, m);
  std::vector<std::optional<NodeId>> map;
  res.model = restrict_model(w, generated_nodes(w, a), &map);

  std::string bname = "b";
  for (int n = 1; res.model.find(bname); ++n) bname = "b" + std::to_string(n);
  res.b = res.model.add_node(bname);
  for (NodeId x : res.alpha) res.model.add_edge(m + 1, res.b, *map[x]);
  for (Modality i : w.indices()) {
    if (i > m) break;
    for (NodeId y : w.successors(i, a)) res.model.add_edge(i, res.b, *map[y]);
  }
  return res;
}

bool SurgeryReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

SurgeryReport check_surgery_conclusion(const JModel& w2, NodeId b, Modality m, const Formula& psi, const Formula& phi) {
  SurgeryReport rep;
  auto add = [&](std::string name, bool ok) { rep.checks.push_back({std::move(name), ok}); };

  add("J-frame", validate_frame(w2).empty());
  add("b is the hereditary root", hereditary_root(w2) == b);

  Evaluator ev(w2);
  Formula f = reduction_premise(m, psi, phi);
  Formula not_phi = Formula::neg(phi);
  Formula m_not_phi = Formula::box(m, not_phi);
  Formula m1_not_psi = Formula::box(m + 1, Formula::neg(psi));
  add("b |= " + to_string(Formula::dia(m + 1, psi)), ev.at(b, Formula::dia(m + 1, psi)));
  add("b |= " + to_string(m_not_phi), ev.at(b, m_not_phi));
  add("b |= " + to_string(Formula::box(m + 1, not_phi)), ev.at(b, Formula::box(m + 1, not_phi)));

  Modality top = std::max(signature(f).max_modality.value_or(0), m + 1) + 1;
  for (const Formula& sub : box_subformulas(f)) {
    Modality i = sub.index();
    for (Modality j = i + 1; j <= top; ++j) {
      std::string kind;
      if (sub == m_not_phi) kind = "[m]~phi";
      else if (sub == m1_not_psi) kind = "[m+1]~psi";
      else if (j > m + 1) kind = "case 1";
      else if (j <= m) kind = "case 2";
      else if (i < m) kind = "case 3";
      else kind = "case 4";
      Formula inst = Formula::imp(sub, Formula::box(j, sub.lhs()));
      add(kind + ": b |= " + to_string(inst), ev.at(b, inst));
    }
  }

  Formula mplus = build_m_plus(f);
  add("b |= M+", ev.at(b, mplus));
  add("b refutes M+ & <m+1>psi -> <m>phi", !ev.at(b, Formula::imp(Formula::conj(mplus, Formula::dia(m + 1, psi)),
                                                                    Formula::dia(m, phi))));
  return rep;
}

}  // namespace glpkit
