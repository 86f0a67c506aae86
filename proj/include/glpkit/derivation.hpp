#pragma once

// Hilbert-style derivations for J and GLP.
//
// Axiom schemas (A, B arbitrary formulas):
//   taut    classical tautologies, modal subformulas read as atoms
//   dual    <i>A -> ~[i]~A   and   ~[i]~A -> <i>A
//   K       [i](A -> B) -> ([i]A -> [i]B)
//   lob     [i]([i]A -> A) -> [i]A
//   dia-up  <m>A -> [n]<m>A           (m < n)
//   box-up  [m]A -> [n][m]A           (m < n)
//   box-in  [m]A -> [m][n]A           (m < n)
//   mono    <n>A -> <m>A              (m <= n, GLP only)
// Rules: modus ponens and necessitation [i] for every i.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "glpkit/formula.hpp"

namespace glpkit {

enum class System { J, GLP };

struct Line {
  enum class Kind { Axiom, MP, Nec } kind = Kind::Axiom;
  std::string schema;     // Axiom
  Formula formula;        // stated for axioms, computed for rules
  std::size_t a = 0;      // MP: first premise (1-based); Nec: premise
  std::size_t b = 0;      // MP: second premise
  Modality index = 0;     // Nec
};

struct Derivation {
  std::vector<Line> lines;
  const Formula& conclusion() const { return lines.back().formula; }
};

struct CheckResult {
  bool ok = false;
  std::size_t line = 0;  // offending line (1-based), 0 when not line-specific
  std::string message;
};

// Does f instantiate the named schema in the given system?
bool matches_schema(std::string_view schema, const Formula& f, System system);

// Checks every line and that the last line equals target.  Rule lines have
// their formula recomputed; the stored formula of a rule line is ignored.
CheckResult check_derivation(const Derivation& d, const Formula& target, System system);

// Text format, one step per line:
//   n. axiom <schema> : <formula>
//   n. mp <i> <j>
//   n. nec <index> <i>
// Blank lines and lines starting with '#' are skipped.
class DerivationParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
Derivation parse_derivation(std::string_view text);
std::string to_string(const Derivation& d);

// The lines needed for `line` (1-based), renumbered, ending with it.
Derivation slice(const Derivation& d, std::size_t line);

// Incremental construction with reuse of already derived formulas.
class DerivationBuilder {
 public:
  // Each returns the 1-based line number proving the formula.
  std::size_t axiom(std::string schema, Formula f);
  std::size_t mp(std::size_t imp_line, std::size_t ante_line);
  std::size_t nec(Modality i, std::size_t line);

  const Formula& formula(std::size_t line) const { return d_.lines.at(line - 1).formula; }
  std::optional<std::size_t> find(const Formula& f) const;

  // Derives c from the premise lines when p1 -> (p2 -> ... -> c) is a tautology.
  std::size_t taut_from(const std::vector<std::size_t>& premises, const Formula& c);
  // From a line X -> Y, derive [n]X -> [n]Y.
  std::size_t box_mono(Modality n, std::size_t imp_line);
  // [n]A -> [n][n]A, via Loeb.
  std::size_t four(Modality n, const Formula& a);
  // From lines P -> [n]X_1, ..., P -> [n]X_k derive P -> [n](X_1 & ... & X_k)
  // (left-folded; k >= 1).  For k = 0 derives P -> [n]T.
  std::size_t box_conj(Modality n, const Formula& p, const std::vector<std::size_t>& lines);
  // ~[i]A -> <i>~A  and  <i>~A -> ~[i]A.
  std::size_t neg_box_to_dia(Modality i, const Formula& a);
  std::size_t dia_to_neg_box(Modality i, const Formula& a);

  Derivation take() { return std::move(d_); }
  const Derivation& get() const { return d_; }
  std::size_t size() const { return d_.lines.size(); }

 private:
  std::size_t push(Line l);
  Derivation d_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

}  // namespace glpkit
