#include "glpkit/countermodel.hpp"

#include <map>
#include <mutex>

#include "glpkit/sat.hpp"

namespace glpkit {

namespace {

// A child slot: label on the edge and the subtree (size, index within size).
struct Child {
  Modality label;
  std::size_t size;
  std::size_t index;
  auto operator<=>(const Child&) const = default;
};
using Tree = std::vector<Child>;  // children in non-decreasing order

class TreeCatalog {
 public:
  explicit TreeCatalog(Modality max_label) : labels_(max_label + 1) {
    by_size_.push_back({});
    by_size_.push_back({Tree{}});
  }

  const std::vector<Tree>& trees(std::size_t n) {
    while (by_size_.size() <= n) grow();
    return by_size_[n];
  }

  // Parent-array materialization: adds the subtree below `parent`.
  void build(JModel& w, const Tree& t, NodeId self) const {
    for (const Child& c : t) {
      NodeId x = w.add_node("w" + std::to_string(w.size()));
      w.add_edge(c.label, self, x);
      build(w, by_size_[c.size][c.index], x);
    }
  }

 private:
  void grow() {
    std::size_t n = by_size_.size();
    std::vector<Tree> out;
    Tree cur;
    extend(n - 1, cur, out);
    by_size_.push_back(std::move(out));
  }

  // Children multisets of total size `left`, each child >= cur.back().
  void extend(std::size_t left, Tree& cur, std::vector<Tree>& out) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t s = 1; s <= left; ++s) {
      for (std::size_t i = 0; i < by_size_[s].size(); ++i) {
        for (Modality l = 0; l < labels_; ++l) {
          Child c{l, s, i};
          if (!cur.empty() && c < cur.back()) continue;
          cur.push_back(c);
          extend(left - s, cur, out);
          cur.pop_back();
        }
      }
    }
  }

  Modality labels_;
  std::vector<std::vector<Tree>> by_size_;
};

std::mutex cache_mutex;
std::map<std::pair<std::size_t, Modality>, std::vector<JModel>> frame_cache;

// Per-node SAT encoding of subformulas.
class FrameEncoder {
 public:
  FrameEncoder(SatSolver& s, const JModel& w) : s_(s), w_(w) {}

  int lit(const Formula& g, NodeId x) {
    auto key = std::pair{g, x};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int out = 0;
    switch (g.op()) {
      case Op::Top:
      case Op::Bot:
        if (!true_) {
          true_ = s_.new_var();
          s_.add_clause({true_});
        }
        out = g.is(Op::Top) ? true_ : -true_;
        break;
      case Op::Var:
        out = s_.new_var();
        vars_.emplace(std::pair{g.name(), x}, out);
        break;
      case Op::Not:
        out = -lit(g.lhs(), x);
        break;
      case Op::And:
      case Op::Or:
      case Op::Imp: {
        int a = lit(g.lhs(), x), b = lit(g.rhs(), x);
        if (g.is(Op::Imp)) a = -a;
        out = s_.new_var();
        if (g.is(Op::And)) {
          s_.add_clause({-out, a});
          s_.add_clause({-out, b});
          s_.add_clause({out, -a, -b});
        } else {
          s_.add_clause({-out, a, b});
          s_.add_clause({out, -a});
          s_.add_clause({out, -b});
        }
        break;
      }
      case Op::Box:
      case Op::Dia: {
        // Box: out <-> AND of successors; Dia: out <-> OR.
        bool box = g.is(Op::Box);
        std::vector<int> ys;
        for (NodeId y : w_.successors(g.index(), x)) ys.push_back(lit(g.lhs(), y));
        out = s_.new_var();
        std::vector<int> big{box ? out : -out};
        for (int y : ys) {
          if (box) {
            s_.add_clause({-out, y});
            big.push_back(-y);
          } else {
            s_.add_clause({out, -y});
            big.push_back(y);
          }
        }
        s_.add_clause(big);
        break;
      }
    }
    memo_.emplace(key, out);
    return out;
  }

  const std::map<std::pair<std::string, NodeId>, int>& vars() const { return vars_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<Formula, NodeId>& k) const { return k.first.hash() * 31 + k.second; }
  };
  SatSolver& s_;
  const JModel& w_;
  std::unordered_map<std::pair<Formula, NodeId>, int, KeyHash> memo_;
  std::map<std::pair<std::string, NodeId>, int> vars_;
  int true_ = 0;
};

}  // namespace

const std::vector<JModel>& tree_frames(std::size_t nodes, Modality max_label) {
  std::lock_guard lock(cache_mutex);
  auto key = std::pair{nodes, max_label};
  if (auto it = frame_cache.find(key); it != frame_cache.end()) return it->second;
  TreeCatalog cat(max_label);
  std::vector<JModel> out;
  if (nodes > 0) {
    for (const Tree& t : cat.trees(nodes)) {
      JModel w;
      w.add_node("w0");
      cat.build(w, t, 0);
      close_frame(w);
      if (validate_frame(w).empty()) out.push_back(std::move(w));
    }
  }
  return frame_cache.emplace(key, std::move(out)).first->second;
}

std::optional<Countermodel> refute_on_frame(const JModel& w, const Formula& f) {
  SatSolver s;
  FrameEncoder enc(s, w);
  std::vector<int> some_false;
  std::vector<int> at;
  for (NodeId x = 0; x < w.size(); ++x) {
    at.push_back(enc.lit(f, x));
    some_false.push_back(-at.back());
  }
  s.add_clause(some_false);
  if (!s.solve()) return std::nullopt;
  Countermodel cm{w, 0, 0};
  for (const auto& v : signature(f).variables) cm.model.declare_var(v);
  for (const auto& [key, var] : enc.vars())
    if (s.value(var)) cm.model.set_true(key.first, key.second);
  // Prefer the root when it already refutes f.
  for (NodeId x = 0; x < w.size(); ++x) {
    bool holds = at[x] > 0 ? s.value(at[x]) : !s.value(-at[x]);
    if (!holds) {
      cm.node = x;
      break;
    }
  }
  return cm;
}

std::optional<Countermodel> find_countermodel_serial(const Formula& f, std::size_t nodes, const std::atomic<bool>* stop) {
  const auto& frames = tree_frames(nodes, signature(f).max_modality.value_or(0));
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (stop && stop->load(std::memory_order_relaxed)) return std::nullopt;
    if (auto cm = refute_on_frame(frames[i], f)) {
      cm->frame = i;
      return cm;
    }
  }
  return std::nullopt;
}

std::optional<Countermodel> find_countermodel_parallel(const Formula& f, std::size_t nodes,
                                                       const std::atomic<bool>* stop) {
  const auto& frames = tree_frames(nodes, signature(f).max_modality.value_or(0));
  const auto count = static_cast<std::ptrdiff_t>(frames.size());
  std::atomic<std::ptrdiff_t> best{count};
  std::optional<Countermodel> result;
  std::mutex m;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    // Frames above the best hit so far cannot change the answer.
    if (i > best.load(std::memory_order_relaxed)) continue;
    if (stop && stop->load(std::memory_order_relaxed)) continue;
    auto cm = refute_on_frame(frames[static_cast<std::size_t>(i)], f);
    if (!cm) continue;
    std::lock_guard lock(m);
    if (i < best.load()) {
      best = i;
      cm->frame = static_cast<std::size_t>(i);
      result = std::move(cm);
    }
  }
  if (stop && stop->load() && !result) return std::nullopt;
  return result;
}

}  // namespace glpkit
