#include "glpkit/jmodel.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace glpkit {

namespace {
const std::vector<NodeId> kNoSuccessors;
}

NodeId JModel::add_node(std::string name) {
  names_.push_back(std::move(name));
  for (auto& [i, succ] : rel_) succ.emplace_back();
  for (auto& [v, bits] : valuation_) bits.push_back(false);
  return names_.size() - 1;
}

void JModel::add_edge(Modality i, NodeId x, NodeId y) {
  if (x >= size() || y >= size()) throw ModelError("add_edge: node out of range");
  auto& succ = rel_[i];
  succ.resize(size());
  auto& s = succ[x];
  auto it = std::lower_bound(s.begin(), s.end(), y);
  if (it == s.end() || *it != y) s.insert(it, y);
}

void JModel::remove_edges(Modality i, NodeId x) {
  auto it = rel_.find(i);
  if (it != rel_.end()) it->second.at(x).clear();
}

void JModel::declare_var(const std::string& var) { valuation_[var].resize(size(), false); }

void JModel::set_true(const std::string& var, NodeId x) {
  auto& bits = valuation_[var];
  bits.resize(size(), false);
  bits.at(x) = true;
}

std::optional<NodeId> JModel::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

std::vector<Modality> JModel::indices() const {
  std::vector<Modality> out;
  for (const auto& [i, succ] : rel_) {
    if (std::any_of(succ.begin(), succ.end(), [](const auto& s) { return !s.empty(); })) out.push_back(i);
  }
  return out;
}

const std::vector<NodeId>& JModel::successors(Modality i, NodeId x) const {
  auto it = rel_.find(i);
  if (it == rel_.end() || x >= it->second.size()) return kNoSuccessors;
  return it->second[x];
}

bool JModel::has_edge(Modality i, NodeId x, NodeId y) const {
  const auto& s = successors(i, x);
  return std::binary_search(s.begin(), s.end(), y);
}

std::optional<Modality> JModel::max_index() const {
  auto idx = indices();
  if (idx.empty()) return std::nullopt;
  return idx.back();
}

bool JModel::holds(const std::string& var, NodeId x) const {
  auto it = valuation_.find(var);
  return it != valuation_.end() && it->second.at(x);
}

// ---------------------------------------------------------------------------

std::vector<Violation> validate_frame(const JModel& w) {
  std::vector<Violation> out;
  auto edge = [&](Modality i, NodeId x, NodeId y) {
    return "(" + w.name(x) + ", " + w.name(y) + ") in R" + std::to_string(i);
  };
  auto idx = w.indices();
  for (Modality i : idx) {
    for (NodeId x = 0; x < w.size(); ++x) {
      if (w.has_edge(i, x, x)) out.push_back({"irreflexive", edge(i, x, x)});
      for (NodeId y : w.successors(i, x)) {
        for (NodeId z : w.successors(i, y)) {
          if (!w.has_edge(i, x, z))
            out.push_back({"transitive", edge(i, x, y) + " and " + edge(i, y, z) + " but not " + edge(i, x, z)});
        }
      }
    }
  }
  for (Modality n : idx) {
    for (NodeId x = 0; x < w.size(); ++x) {
      for (NodeId y : w.successors(n, x)) {
        for (Modality m : idx) {
          if (m >= n) break;
          if (w.successors(m, x) != w.successors(m, y))
            out.push_back({"lower-successors", edge(n, x, y) + " but R" + std::to_string(m) + "(" + w.name(x) +
                                                   ") != R" + std::to_string(m) + "(" + w.name(y) + ")"});
        }
      }
    }
  }
  for (Modality m : idx) {
    for (NodeId x = 0; x < w.size(); ++x) {
      for (NodeId y : w.successors(m, x)) {
        for (Modality n : idx) {
          if (n <= m) continue;
          for (NodeId z : w.successors(n, y)) {
            if (!w.has_edge(m, x, z))
              out.push_back({"lower-transitive", edge(m, x, y) + " and " + edge(n, y, z) + " but not " + edge(m, x, z)});
          }
        }
      }
    }
  }
  return out;
}

void close_frame(JModel& w) {
  bool changed = true;
  auto add = [&](Modality i, NodeId x, NodeId y) {
    if (!w.has_edge(i, x, y)) {
      w.add_edge(i, x, y);
      changed = true;
    }
  };
  while (changed) {
    changed = false;
    auto idx = w.indices();
    for (Modality n : idx) {
      for (NodeId x = 0; x < w.size(); ++x) {
        for (NodeId y : std::vector<NodeId>(w.successors(n, x))) {
          for (NodeId z : std::vector<NodeId>(w.successors(n, y))) add(n, x, z);
          for (Modality m : idx) {
            if (m >= n) break;
            for (NodeId z : std::vector<NodeId>(w.successors(m, x))) add(m, y, z);
            for (NodeId z : std::vector<NodeId>(w.successors(m, y))) add(m, x, z);
          }
          for (Modality k : idx) {
            if (k <= n) continue;
            for (NodeId z : std::vector<NodeId>(w.successors(k, y))) add(n, x, z);
          }
        }
      }
    }
  }
}

const std::vector<bool>& Evaluator::truth(const Formula& f) {
  if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  const std::size_t n = w_.size();
  std::vector<bool> out(n, false);
  switch (f.op()) {
    case Op::Top:
      out.assign(n, true);
      break;
    case Op::Bot:
      break;
    case Op::Var:
      for (NodeId x = 0; x < n; ++x) out[x] = w_.holds(f.name(), x);
      break;
    case Op::Not: {
      const auto& a = truth(f.lhs());
      for (NodeId x = 0; x < n; ++x) out[x] = !a[x];
      break;
    }
    case Op::And:
    case Op::Or:
    case Op::Imp: {
      std::vector<bool> a = truth(f.lhs());
      const auto& b = truth(f.rhs());
      for (NodeId x = 0; x < n; ++x) {
        if (f.is(Op::And)) out[x] = a[x] && b[x];
        else if (f.is(Op::Or)) out[x] = a[x] || b[x];
        else out[x] = !a[x] || b[x];
      }
      break;
    }
    case Op::Box:
    case Op::Dia: {
      const auto& a = truth(f.lhs());
      bool box = f.is(Op::Box);
      for (NodeId x = 0; x < n; ++x) {
        const auto& succ = w_.successors(f.index(), x);
        if (box) out[x] = std::all_of(succ.begin(), succ.end(), [&](NodeId y) { return a[y]; });
        else out[x] = std::any_of(succ.begin(), succ.end(), [&](NodeId y) { return a[y]; });
      }
      break;
    }
  }
  return memo_.emplace(f, std::move(out)).first->second;
}

std::vector<bool> truth_set(const JModel& w, const Formula& f) { return Evaluator(w).truth(f); }

bool eval(const JModel& w, NodeId x, const Formula& f) {
  if (x >= w.size()) throw ModelError("eval: unknown node");
  return Evaluator(w).at(x, f);
}

// ---------------------------------------------------------------------------

namespace {

// Nodes reachable from r with non-increasing indices along the path.
std::vector<bool> hereditary_reach(const JModel& w, NodeId r, const std::vector<Modality>& idx) {
  // State: (node, position in idx of the last index used; idx.size() = none yet).
  const std::size_t k = idx.size();
  std::vector<std::vector<bool>> seen(w.size(), std::vector<bool>(k + 1, false));
  std::vector<bool> reach(w.size(), false);
  std::deque<std::pair<NodeId, std::size_t>> queue{{r, k}};
  seen[r][k] = true;
  reach[r] = true;
  while (!queue.empty()) {
    auto [x, last] = queue.front();
    queue.pop_front();
    for (std::size_t p = 0; p < k; ++p) {
      if (last != k && p > last) break;
      for (NodeId y : w.successors(idx[p], x)) {
        reach[y] = true;
        if (!seen[y][p]) {
          seen[y][p] = true;
          queue.emplace_back(y, p);
        }
      }
    }
  }
  return reach;
}

}  // namespace

std::optional<NodeId> hereditary_root(const JModel& w) {
  auto idx = w.indices();
  std::optional<NodeId> root;
  for (NodeId r = 0; r < w.size(); ++r) {
    auto reach = hereditary_reach(w, r, idx);
    if (std::all_of(reach.begin(), reach.end(), [](bool b) { return b; })) {
      if (root) return std::nullopt;
      root = r;
    }
  }
  return root;
}

std::vector<NodeId> plane(const JModel& w, NodeId a, Modality m) {
  std::vector<NodeId> out{a};
  for (Modality s : w.indices()) {
    if (s <= m) continue;
    const auto& succ = w.successors(s, a);
    out.insert(out.end(), succ.begin(), succ.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeId> generated_nodes(const JModel& w, NodeId a) {
  auto idx = w.indices();
  std::vector<bool> seen(w.size(), false);
  std::vector<NodeId> stack{a};
  seen[a] = true;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (Modality i : idx) {
      for (NodeId y : w.successors(i, x)) {
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId x = 0; x < w.size(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

JModel restrict_model(const JModel& w, const std::vector<NodeId>& keep, std::vector<std::optional<NodeId>>* old_to_new) {
  std::vector<std::optional<NodeId>> map(w.size());
  JModel out;
  for (NodeId x : keep) map[x] = out.add_node(w.name(x));
  for (Modality i : w.indices()) {
    for (NodeId x : keep) {
      for (NodeId y : w.successors(i, x))
        if (map[y]) out.add_edge(i, *map[x], *map[y]);
    }
  }
  for (const auto& [var, bits] : w.valuation()) {
    out.declare_var(var);
    for (NodeId x : keep)
      if (bits[x]) out.set_true(var, *map[x]);
  }
  if (old_to_new) *old_to_new = std::move(map);
  return out;
}

// ---------------------------------------------------------------------------

Partition bisim_classes(const JModel& w, std::size_t depth) {
  const std::size_t n = w.size();
  Partition part;
  part.block_of.assign(n, 0);

  auto relabel = [&](const std::vector<std::vector<std::size_t>>& keys) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> block(n);
    for (NodeId x = 0; x < n; ++x) {
      auto [it, fresh] = ids.emplace(keys[x], ids.size());
      block[x] = it->second;
    }
    return block;
  };

  std::vector<std::vector<std::size_t>> keys(n);
  for (NodeId x = 0; x < n; ++x) {
    for (const auto& [var, bits] : w.valuation()) keys[x].push_back(bits[x] ? 1 : 0);
  }
  std::vector<std::size_t> block = relabel(keys);
  auto idx = w.indices();
  for (std::size_t t = 0; t < depth; ++t) {
    for (NodeId x = 0; x < n; ++x) {
      keys[x] = {block[x]};
      for (Modality i : idx) {
        std::vector<std::size_t> succ_blocks;
        for (NodeId y : w.successors(i, x)) succ_blocks.push_back(block[y]);
        std::sort(succ_blocks.begin(), succ_blocks.end());
        succ_blocks.erase(std::unique(succ_blocks.begin(), succ_blocks.end()), succ_blocks.end());
        keys[x].push_back(std::numeric_limits<std::size_t>::max());
        keys[x].insert(keys[x].end(), succ_blocks.begin(), succ_blocks.end());
      }
    }
    std::vector<std::size_t> next = relabel(keys);
    bool stable = std::set<std::size_t>(next.begin(), next.end()).size() ==
                  std::set<std::size_t>(block.begin(), block.end()).size();
    block = std::move(next);
    if (stable) break;
  }

  part.depth = depth;
  part.block_of = block;
  for (NodeId x = 0; x < n; ++x) {
    if (block[x] >= part.blocks.size()) part.blocks.resize(block[x] + 1);
    part.blocks[block[x]].push_back(x);
  }
  return part;
}

BisimBound::BisimBound(std::size_t d, std::size_t v, std::size_t r) {
  using boost::multiprecision::cpp_int;
  auto paren = [](const std::string& s) { return s.find_first_of("^+*") == std::string::npos ? s : "(" + s + ")"; };
  value_ = cpp_int(1) << v;
  text_ = value_->str();
  for (std::size_t t = 0; t < d; ++t) {
    std::string exponent_text = std::to_string(v) + "+" + std::to_string(r + 1) + "*" + paren(text_);
    if (value_) {
      cpp_int exponent = cpp_int(v) + cpp_int(r + 1) * *value_;
      if (exponent <= max_bits) {
        value_ = cpp_int(1) << static_cast<unsigned>(exponent);
        text_ = value_->str();
        continue;
      }
      exponent_text = exponent.str();
    }
    value_.reset();
    text_ = "2^" + paren(exponent_text);
  }
}

bool BisimBound::at_least(const boost::multiprecision::cpp_int& k) const {
  // An unmaterialized bound exceeds 2^max_bits.
  if (!value_) return msb(k) < max_bits || k == 0;
  return k <= *value_;
}

std::string BisimBound::to_string() const { return text_; }

BisimBound bisim_class_bound(std::size_t d, std::size_t v, std::size_t r) { return BisimBound(d, v, r); }

// ---------------------------------------------------------------------------

JModel model_from_json(const nlohmann::json& j, bool require_j_frame) {
  if (!j.is_object()) throw ModelError("model: expected a JSON object");
  JModel w;
  if (!j.contains("nodes") || !j["nodes"].is_array()) throw ModelError("model: missing \"nodes\" array");
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) throw ModelError("model: node names must be strings");
    if (w.find(n.get<std::string>())) throw ModelError("model: duplicate node " + n.get<std::string>());
    w.add_node(n.get<std::string>());
  }
  auto node = [&](const nlohmann::json& n) {
    if (!n.is_string()) throw ModelError("model: node references must be strings");
    auto x = w.find(n.get<std::string>());
    if (!x) throw ModelError("model: unknown node " + n.get<std::string>());
    return *x;
  };
  if (j.contains("relations")) {
    if (!j["relations"].is_object()) throw ModelError("model: \"relations\" must be an object");
    for (const auto& [key, edges] : j["relations"].items()) {
      if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ModelError("model: relation key '" + key + "' is not a decimal index");
      unsigned long long i = 0;
      try {
        i = std::stoull(key);
      } catch (const std::exception&) {
        throw ModelError("model: relation key '" + key + "' out of range");
      }
      if (i > std::numeric_limits<Modality>::max()) throw ModelError("model: relation key '" + key + "' out of range");
      if (!edges.is_array()) throw ModelError("model: relation " + key + " must be an array of pairs");
      for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2) throw ModelError("model: relation " + key + " must be an array of pairs");
        w.add_edge(static_cast<Modality>(i), node(e[0]), node(e[1]));
      }
    }
  }
  if (j.contains("valuation")) {
    if (!j["valuation"].is_object()) throw ModelError("model: \"valuation\" must be an object");
    for (const auto& [var, nodes] : j["valuation"].items()) {
      if (!nodes.is_array()) throw ModelError("model: valuation of " + var + " must be an array");
      for (const auto& n : nodes) w.set_true(var, node(n));
    }
  }
  if (!require_j_frame) return w;
  auto violations = validate_frame(w);
  if (!violations.empty()) {
    std::string msg = "model is not a J-frame:";
    for (const auto& v : violations) msg += "\n  " + v.condition + ": " + v.detail;
    throw ModelError(msg);
  }
  return w;
}

nlohmann::json model_to_json(const JModel& w) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (NodeId x = 0; x < w.size(); ++x) j["nodes"].push_back(w.name(x));
  j["relations"] = nlohmann::json::object();
  for (Modality i : w.indices()) {
    auto& edges = j["relations"][std::to_string(i)];
    edges = nlohmann::json::array();
    for (NodeId x = 0; x < w.size(); ++x)
      for (NodeId y : w.successors(i, x)) edges.push_back({w.name(x), w.name(y)});
  }
  j["valuation"] = nlohmann::json::object();
  for (const auto& [var, bits] : w.valuation()) {
    auto& nodes = j["valuation"][var];
    nodes = nlohmann::json::array();
    for (NodeId x = 0; x < w.size(); ++x)
      if (bits[x]) nodes.push_back(w.name(x));
  }
  return j;
}

}  // namespace glpkit
