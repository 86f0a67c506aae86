#include "glpkit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <unordered_set>

namespace glpkit {

struct Formula::Node {
  Op op = Op::Top;
  Modality index = 0;
  std::string name;
  Formula a;
  Formula b;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula::Formula() : node_(nullptr) {}

namespace {
std::shared_ptr<Formula::Node> make_node(Op op) {
  auto n = std::make_shared<Formula::Node>();
  n->op = op;
  return n;
}
}  // namespace

Formula Formula::top() { return Formula(); }

Formula Formula::bot() {
  static const std::shared_ptr<const Node> bot = [] {
    auto n = make_node(Op::Bot);
    n->hash = mix(0, static_cast<std::size_t>(Op::Bot));
    return n;
  }();
  return Formula(bot);
}

Formula Formula::var(std::string name) {
  auto n = make_node(Op::Var);
  n->hash = mix(std::hash<std::string>{}(name), static_cast<std::size_t>(Op::Var));
  n->name = std::move(name);
  return Formula(std::move(n));
}

namespace {
std::shared_ptr<Formula::Node> unary(Op op, Modality i, Formula f) {
  auto n = make_node(op);
  n->index = i;
  n->hash = mix(mix(f.hash(), i), static_cast<std::size_t>(op));
  n->size = f.size() + 1;
  n->a = std::move(f);
  return n;
}

std::shared_ptr<Formula::Node> binary(Op op, Formula a, Formula b) {
  auto n = make_node(op);
  n->hash = mix(mix(a.hash(), b.hash()), static_cast<std::size_t>(op));
  n->size = a.size() + b.size() + 1;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
}  // namespace

Formula Formula::neg(Formula f) { return Formula(unary(Op::Not, 0, std::move(f))); }
Formula Formula::conj(Formula a, Formula b) { return Formula(binary(Op::And, std::move(a), std::move(b))); }
Formula Formula::disj(Formula a, Formula b) { return Formula(binary(Op::Or, std::move(a), std::move(b))); }
Formula Formula::imp(Formula a, Formula b) { return Formula(binary(Op::Imp, std::move(a), std::move(b))); }
Formula Formula::box(Modality i, Formula f) { return Formula(unary(Op::Box, i, std::move(f))); }
Formula Formula::dia(Modality i, Formula f) { return Formula(unary(Op::Dia, i, std::move(f))); }

Op Formula::op() const { return node_ ? node_->op : Op::Top; }

const std::string& Formula::name() const {
  static const std::string empty;
  return node_ ? node_->name : empty;
}

Modality Formula::index() const { return node_ ? node_->index : 0; }

const Formula& Formula::lhs() const {
  if (!node_) throw std::logic_error("constant has no operands");
  return node_->a;
}

const Formula& Formula::rhs() const {
  if (!node_) throw std::logic_error("constant has no operands");
  return node_->b;
}

std::size_t Formula::hash() const { return node_ ? node_->hash : 0x51ed27; }
std::size_t Formula::size() const { return node_ ? node_->size : 1; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.size() != b.size()) return false;
  switch (a.op()) {
    case Op::Top:
    case Op::Bot:
      return true;
    case Op::Var:
      return a.name() == b.name();
    case Op::Not:
      return a.lhs() == b.lhs();
    case Op::Box:
    case Op::Dia:
      return a.index() == b.index() && a.lhs() == b.lhs();
    case Op::And:
    case Op::Or:
    case Op::Imp:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  switch (a.op()) {
    case Op::Top:
    case Op::Bot:
      return std::strong_ordering::equal;
    case Op::Var:
      return a.name().compare(b.name()) <=> 0;
    case Op::Not:
      return a.lhs() <=> b.lhs();
    case Op::Box:
    case Op::Dia:
      if (auto c = a.index() <=> b.index(); c != 0) return c;
      return a.lhs() <=> b.lhs();
    case Op::And:
    case Op::Or:
    case Op::Imp:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    Formula f = implication();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::imp(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::disj(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary_formula();
    while (accept("&")) f = Formula::conj(std::move(f), unary_formula());
    return f;
  }

  Modality natural() {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > std::numeric_limits<Modality>::max()) fail("modality index out of range");
      ++pos_;
    }
    if (pos_ == start) fail("modality index must be a decimal natural");
    return static_cast<Modality>(value);
  }

  Formula unary_formula() {
    skip_ws();
    if (accept("~")) return Formula::neg(unary_formula());
    if (accept("[")) {
      Modality i = natural();
      expect("]");
      return Formula::box(i, unary_formula());
    }
    // '<' starts a diamond; "->" is handled by the caller so no ambiguity here.
    if (accept("<")) {
      Modality i = natural();
      expect(">");
      return Formula::dia(i, unary_formula());
    }
    return atom();
  }

  Formula atom() {
    skip_ws();
    if (accept("(")) {
      Formula f = implication();
      expect(")");
      return f;
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string ident(text_.substr(start, pos_ - start));
      if (ident == "T") return Formula::top();
      if (ident == "F") return Formula::bot();
      return Formula::var(std::move(ident));
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Binding strength: implication 1, disjunction 2, conjunction 3, prefix 4.
void render(const Formula& f, int context, std::string& out) {
  auto wrap = [&](int own, auto&& body) {
    bool paren = own < context;
    if (paren) out += '(';
    body();
    if (paren) out += ')';
  };
  switch (f.op()) {
    case Op::Top:
      out += 'T';
      return;
    case Op::Bot:
      out += 'F';
      return;
    case Op::Var:
      out += f.name();
      return;
    case Op::Not:
      out += '~';
      render(f.lhs(), 4, out);
      return;
    case Op::Box:
      out += '[' + std::to_string(f.index()) + ']';
      render(f.lhs(), 4, out);
      return;
    case Op::Dia:
      out += '<' + std::to_string(f.index()) + '>';
      render(f.lhs(), 4, out);
      return;
    case Op::And:
      wrap(3, [&] {
        render(f.lhs(), 3, out);
        out += " & ";
        render(f.rhs(), 4, out);
      });
      return;
    case Op::Or:
      wrap(2, [&] {
        render(f.lhs(), 2, out);
        out += " | ";
        render(f.rhs(), 3, out);
      });
      return;
    case Op::Imp:
      wrap(1, [&] {
        render(f.lhs(), 2, out);
        out += " -> ";
        render(f.rhs(), 1, out);
      });
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).run(); }

std::string to_string(const Formula& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(std::move(acc), fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bot();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(std::move(acc), fs[i]);
  return acc;
}

namespace {
void collect_signature(const Formula& f, Signature& sig) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
      return;
    case Op::Var:
      sig.variables.insert(f.name());
      return;
    case Op::Box:
    case Op::Dia:
      sig.max_modality = std::max(sig.max_modality.value_or(0), f.index());
      collect_signature(f.lhs(), sig);
      return;
    case Op::Not:
      collect_signature(f.lhs(), sig);
      return;
    case Op::And:
    case Op::Or:
    case Op::Imp:
      collect_signature(f.lhs(), sig);
      collect_signature(f.rhs(), sig);
      return;
  }
}
}  // namespace

Signature signature(const Formula& f) {
  Signature sig;
  collect_signature(f, sig);
  return sig;
}

std::size_t modal_depth(const Formula& f) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
    case Op::Var:
      return 0;
    case Op::Not:
      return modal_depth(f.lhs());
    case Op::Box:
    case Op::Dia:
      return 1 + modal_depth(f.lhs());
    case Op::And:
    case Op::Or:
    case Op::Imp:
      return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
  }
  return 0;
}

Formula build_q(Modality n, unsigned k, const Formula& f) {
  Formula q = Formula::top();
  for (unsigned step = 0; step < k; ++step) q = Formula::dia(n, Formula::conj(f, q));
  return q;
}

std::vector<Formula> box_subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.op()) {
      case Op::Top:
      case Op::Bot:
      case Op::Var:
        return;
      case Op::Box:
        if (seen.insert(g).second) out.push_back(g);
        walk(g.lhs());
        return;
      case Op::Dia: {
        Formula boxed = Formula::box(g.index(), Formula::neg(g.lhs()));
        if (seen.insert(boxed).second) out.push_back(boxed);
        walk(g.lhs());
        return;
      }
      case Op::Not:
        walk(g.lhs());
        return;
      case Op::And:
      case Op::Or:
      case Op::Imp:
        walk(g.lhs());
        walk(g.rhs());
        return;
    }
  };
  walk(f);
  return out;
}

Formula build_m(const Formula& f) {
  auto r = signature(f).max_modality;
  if (!r) return Formula::top();
  std::vector<Formula> conjuncts;
  for (const Formula& b : box_subformulas(f)) {
    for (Modality j = b.index() + 1; j <= *r; ++j)
      conjuncts.push_back(Formula::imp(b, Formula::box(j, b.lhs())));
  }
  return conj_all(conjuncts);
}

Formula build_m_plus(const Formula& f) {
  Formula m = build_m(f);
  if (m.is(Op::Top)) return m;
  Modality r = *signature(f).max_modality;
  Formula acc = m;
  for (Modality i = 0; i <= r; ++i) acc = Formula::conj(std::move(acc), Formula::box(i, m));
  return acc;
}

bool pi_class_member(const Formula& f, Modality n) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
      return true;
    case Op::Dia:
      return f.index() <= n;
    case Op::Box:
      return f.index() < n;
    case Op::And:
    case Op::Or:
      return pi_class_member(f.lhs(), n) && pi_class_member(f.rhs(), n);
    default:
      return false;
  }
}

Formula eliminate_diamonds(const Formula& f) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
    case Op::Var:
      return f;
    case Op::Not:
      return Formula::neg(eliminate_diamonds(f.lhs()));
    case Op::Box:
      return Formula::box(f.index(), eliminate_diamonds(f.lhs()));
    case Op::Dia:
      return Formula::neg(Formula::box(f.index(), Formula::neg(eliminate_diamonds(f.lhs()))));
    case Op::And:
      return Formula::conj(eliminate_diamonds(f.lhs()), eliminate_diamonds(f.rhs()));
    case Op::Or:
      return Formula::disj(eliminate_diamonds(f.lhs()), eliminate_diamonds(f.rhs()));
    case Op::Imp:
      return Formula::imp(eliminate_diamonds(f.lhs()), eliminate_diamonds(f.rhs()));
  }
  return f;
}

}  // namespace glpkit
