#pragma once

// Polymodal formulas over propositional variables and modalities [n], <n>.
//
// A Formula is an immutable handle to a shared syntax node, so copies are
// cheap and values can be shared freely between threads.  Structural
// equality and a total structural order are provided so formulas can key
// ordered containers.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace glpkit {

using Modality = std::uint32_t;

enum class Op : std::uint8_t { Top, Bot, Var, Not, And, Or, Imp, Box, Dia };

class Formula {
 public:
  Formula();  // T

  static Formula top();
  static Formula bot();
  static Formula var(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula box(Modality i, Formula f);
  static Formula dia(Modality i, Formula f);

  Op op() const;
  bool is(Op o) const { return op() == o; }
  bool is_modal() const { return is(Op::Box) || is(Op::Dia); }

  // Variable name (Var only).
  const std::string& name() const;
  // Modality index (Box/Dia only).
  Modality index() const;
  // Sole operand of Not/Box/Dia, or left operand of a binary connective.
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t hash() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// ASCII grammar:
//   fml   := impl
//   impl  := disj ('->' impl)?
//   disj  := conj ('|' conj)*
//   conj  := unary ('&' unary)*
//   unary := '~' unary | '[' nat ']' unary | '<' nat '>' unary | atom
//   atom  := 'T' | 'F' | ident | '(' fml ')'
Formula parse_formula(std::string_view text);

// Canonical ASCII rendering with minimal parentheses; reparses to the same AST.
std::string to_string(const Formula& f);

// Left-folded conjunction/disjunction; the empty conjunction is T and the
// empty disjunction is F.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

struct Signature {
  std::set<std::string> variables;
  std::optional<Modality> max_modality;
};

Signature signature(const Formula& f);

// 0 on modality-free formulas, 1 + max over immediate modal subformulas otherwise.
std::size_t modal_depth(const Formula& f);

// Q^0_n(f) = T,  Q^{k+1}_n(f) = <n>(f & Q^k_n(f)).
Formula build_q(Modality n, unsigned k, const Formula& f);

// Box-form subformulas of f in pre-order, without duplicates.  A diamond <i>e
// contributes [i]~e, following the reading of <i> as ~[i]~.
std::vector<Formula> box_subformulas(const Formula& f);

// Conjunction of [i]t -> [j]t over box-form subformulas [i]t and i < j <= r,
// r the largest modality of f.  T when no such instance exists.
Formula build_m(const Formula& f);

// M(f) & [0]M(f) & ... & [r]M(f); T when M(f) is T.
Formula build_m_plus(const Formula& f);

// Membership in the closure under &, | of {T, F} U {<k>z : k <= n} U {[k]z : k < n}.
bool pi_class_member(const Formula& f, Modality n);

// Replaces every <i>e by ~[i]~e.
Formula eliminate_diamonds(const Formula& f);

}  // namespace glpkit
