#pragma once

// Finite Kripke models for the logic J.
//
// A J-frame has one relation R_i per modality index.  The validator checks:
//   - every R_i is irreflexive and transitive;
//   - x R_n y implies R_m(x) = R_m(y) for m < n;
//   - x R_m y and y R_n z imply x R_m z for m < n.
// Nodes are dense indices 0..size()-1 with a display name each.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "glpkit/formula.hpp"

namespace glpkit {

using NodeId = std::size_t;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class JModel {
 public:
  NodeId add_node(std::string name);
  // Adds x R_i y (no-op if present).
  void add_edge(Modality i, NodeId x, NodeId y);
  void remove_edges(Modality i, NodeId x);
  void set_true(const std::string& var, NodeId x);
  // Makes var part of the valuation (false everywhere until set).
  void declare_var(const std::string& var);

  std::size_t size() const { return names_.size(); }
  const std::string& name(NodeId x) const { return names_.at(x); }
  std::optional<NodeId> find(const std::string& name) const;

  // Indices with at least one edge, ascending.
  std::vector<Modality> indices() const;
  // R_i(x), sorted.
  const std::vector<NodeId>& successors(Modality i, NodeId x) const;
  bool has_edge(Modality i, NodeId x, NodeId y) const;
  std::optional<Modality> max_index() const;

  const std::map<std::string, std::vector<bool>>& valuation() const { return valuation_; }
  bool holds(const std::string& var, NodeId x) const;

 private:
  std::vector<std::string> names_;
  std::map<Modality, std::vector<std::vector<NodeId>>> rel_;
  std::map<std::string, std::vector<bool>> valuation_;
};

struct Violation {
  std::string condition;  // "irreflexive", "transitive", "lower-successors", "lower-transitive"
  std::string detail;
};

std::vector<Violation> validate_frame(const JModel& w);

// Adds the edges forced by transitivity and the two cross-index conditions
// until none is missing.  Irreflexivity is not enforced; validate afterwards.
void close_frame(JModel& w);

// Truth value of f at every node; unknown variables are false everywhere.
std::vector<bool> truth_set(const JModel& w, const Formula& f);
bool eval(const JModel& w, NodeId x, const Formula& f);

// Caches truth sets of subformulas for repeated queries on one model.
class Evaluator {
 public:
  explicit Evaluator(const JModel& w) : w_(w) {}
  const std::vector<bool>& truth(const Formula& f);
  bool at(NodeId x, const Formula& f) { return truth(f)[x]; }

 private:
  const JModel& w_;
  std::unordered_map<Formula, std::vector<bool>, FormulaHash> memo_;
};

// The unique node from which every other node is reachable along a path
// with non-increasing modality indices.
std::optional<NodeId> hereditary_root(const JModel& w);

// {x : a R_s x for some s > m} U {a}, sorted.
std::vector<NodeId> plane(const JModel& w, NodeId a, Modality m);

// Nodes reachable from a along edges of any index, including a, sorted.
std::vector<NodeId> generated_nodes(const JModel& w, NodeId a);
// Restriction of w to the given nodes; returns the new model and the map old -> new.
JModel restrict_model(const JModel& w, const std::vector<NodeId>& keep, std::vector<std::optional<NodeId>>* old_to_new = nullptr);

struct Partition {
  std::size_t depth = 0;
  std::vector<std::vector<NodeId>> blocks;  // ordered by least member
  std::vector<std::size_t> block_of;
};

// d-bisimilarity classes over the variables of w's valuation and all
// indices with edges.
Partition bisim_classes(const JModel& w, std::size_t depth);

// N(0) = 2^v, N(t+1) = 2^v * 2^((r+1) N(t)).  Values with more than
// max_bits bits are kept as an exact power-of-two expression instead.
class BisimBound {
 public:
  static constexpr std::size_t max_bits = 4096;

  BisimBound(std::size_t d, std::size_t v, std::size_t r);

  bool materialized() const { return value_.has_value(); }
  const boost::multiprecision::cpp_int& value() const { return *value_; }
  // k <= N?
  bool at_least(const boost::multiprecision::cpp_int& k) const;
  std::string to_string() const;

 private:
  std::optional<boost::multiprecision::cpp_int> value_;
  std::string text_;
};

BisimBound bisim_class_bound(std::size_t d, std::size_t v, std::size_t r);

// JSON model format: {"nodes":[...],"relations":{"0":[[x,y],...]},"valuation":{"p":[...]}}.
// Throws ModelError on malformed input, and when require_j_frame is set
// also when the frame is not a J-frame.
JModel model_from_json(const nlohmann::json& j, bool require_j_frame = true);
nlohmann::json model_to_json(const JModel& w);

}  // namespace glpkit
