#include "glpkit/ordset.hpp"

#include <algorithm>
#include <cctype>

namespace glpkit {

namespace {

Ordinal step_of(const Ordinal& scale) { return Ordinal::omega_power(scale); }

// The last point of a piece, if the piece has a largest element.
std::optional<Ordinal> last_point(const ScaledInterval& p) {
  if (p.empty() || p.hi.smallest_exponent() != p.scale) return std::nullopt;
  std::vector<OrdinalTerm> terms = p.hi.terms();
  Ordinal out;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    out = add(out, Ordinal::omega_power(terms[i].exponent, terms[i].coefficient));
  if (terms.back().coefficient > 1) out = add(out, Ordinal::omega_power(p.scale, terms.back().coefficient - 1));
  return out;
}

bool is_singleton(const ScaledInterval& p) { return !p.empty() && add(p.lo, step_of(p.scale)) >= p.hi; }

ScaledInterval clipped(const ScaledInterval& p, const Ordinal& bound) {
  ScaledInterval q = p;
  if (q.hi > bound) q.hi = bound;
  q.lo = round_up_to_multiple(q.lo, q.scale);
  q.hi = round_up_to_multiple(q.hi, q.scale);
  return q;
}

std::vector<Ordinal> boundaries(const std::vector<ScaledInterval>& a, const std::vector<ScaledInterval>& b) {
  std::vector<Ordinal> out;
  for (const auto* v : {&a, &b}) {
    for (const auto& p : *v) {
      out.push_back(p.lo);
      out.push_back(p.hi);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Smallest scale among pieces whose span covers [c, c2); nullopt if none.
std::optional<Ordinal> covering_scale(const std::vector<ScaledInterval>& ps, const Ordinal& c, const Ordinal& c2) {
  std::optional<Ordinal> best;
  for (const auto& p : ps) {
    if (p.lo <= c && c2 <= p.hi && (!best || p.scale < *best)) best = p.scale;
  }
  return best;
}

}  // namespace

ScaledInterval ScaledInterval::from_factors(const Ordinal& e, const Ordinal& a, const Ordinal& b) {
  return ScaledInterval{e, omega_power_mul(e, a), omega_power_mul(e, b)};
}

bool ScaledInterval::contains(const Ordinal& x) const {
  return lo <= x && x < hi && is_multiple_of_omega_power(x, scale);
}

Ordinal ScaledInterval::factor_lo() const { return *left_divide_by_omega_power(scale, lo); }
Ordinal ScaledInterval::factor_hi() const { return *left_divide_by_omega_power(scale, hi); }

Ordinal ScaledInterval::length() const {
  if (empty()) return Ordinal();
  return *left_subtract(factor_lo(), factor_hi());
}

// ---------------------------------------------------------------------------

Ordinal OrdSet::default_bound() { return Ordinal::omega_power(Ordinal::omega()); }

OrdSet::OrdSet(Ordinal bound) : bound_(std::move(bound)) {}

OrdSet::OrdSet(Ordinal bound, std::vector<ScaledInterval> pieces)
    : bound_(std::move(bound)), pieces_(std::move(pieces)) {
  normalize();
}

OrdSet OrdSet::empty(Ordinal bound) { return OrdSet(std::move(bound)); }

OrdSet OrdSet::whole(Ordinal bound) {
  Ordinal hi = bound;
  return OrdSet(std::move(bound), {ScaledInterval{Ordinal(), Ordinal(), std::move(hi)}});
}

OrdSet OrdSet::interval(Ordinal bound, Ordinal lo, Ordinal hi) {
  return OrdSet(std::move(bound), {ScaledInterval{Ordinal(), std::move(lo), std::move(hi)}});
}

OrdSet OrdSet::singleton(Ordinal bound, Ordinal x) {
  Ordinal next = successor(x);
  return OrdSet(std::move(bound), {ScaledInterval{Ordinal(), std::move(x), std::move(next)}});
}

OrdSet OrdSet::scaled(Ordinal bound, const Ordinal& e, const Ordinal& a, const Ordinal& b) {
  return OrdSet(std::move(bound), {ScaledInterval::from_factors(e, a, b)});
}

namespace {

// Multiples of w^scale in the raw range [lo, hi); ranges of a segmentation
// are sorted and disjoint.
struct Segment {
  Ordinal scale;
  Ordinal lo;
  Ordinal hi;
};

class Segmentation {
 public:
  explicit Segmentation(std::vector<Segment> segs) : segs_(std::move(segs)) {}

  // Least element >= z.
  std::optional<Ordinal> first_at_or_after(const Ordinal& z) const {
    for (const auto& s : segs_) {
      if (s.hi <= z) continue;
      Ordinal c = round_up_to_multiple(std::max(s.lo, z), s.scale);
      if (c < s.hi) return c;
    }
    return std::nullopt;
  }

  std::optional<Ordinal> next_after(const Ordinal& x) const { return first_at_or_after(successor(x)); }

  const Segment& segment_of(const Ordinal& x) const {
    for (const auto& s : segs_) {
      if (s.lo <= x && x < s.hi) return s;
    }
    throw std::logic_error("segment_of: point outside the set");
  }

 private:
  std::vector<Segment> segs_;
};

// The one-term ordinal w^e, if d has that shape.
std::optional<Ordinal> pure_power_exponent(const Ordinal& d) {
  if (d.terms().size() != 1 || d.terms().front().coefficient != 1) return std::nullopt;
  return d.terms().front().exponent;
}

}  // namespace

// Canonical form: scan the set from its least element.  At a point x whose
// successor in the set is x + w^e (x a multiple of w^e) emit the longest
// run of consecutive multiples of w^e that the set contains, otherwise emit
// the singleton {x}.  Everything the scan looks at is a property of the set,
// not of the pieces it was built from, so equal sets print identically.
void OrdSet::normalize() {
  std::vector<ScaledInterval> raw;
  for (const auto& p : pieces_) {
    ScaledInterval q = clipped(p, bound_);
    if (!q.empty()) raw.push_back(std::move(q));
  }

  std::vector<Segment> segs;
  std::vector<Ordinal> cuts = boundaries(raw, {});
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    auto scale = covering_scale(raw, cuts[j], cuts[j + 1]);
    if (!scale || round_up_to_multiple(cuts[j], *scale) >= cuts[j + 1]) continue;
    segs.push_back(Segment{*scale, cuts[j], cuts[j + 1]});
  }
  Segmentation set(std::move(segs));

  std::vector<ScaledInterval> out;
  std::optional<Ordinal> cursor = set.first_at_or_after(Ordinal());
  while (cursor) {
    Ordinal x = *cursor;
    auto next = set.next_after(x);
    std::optional<Ordinal> e;
    if (next) {
      e = pure_power_exponent(*left_subtract(x, *next));
      if (e && !is_multiple_of_omega_power(x, *e)) e.reset();
    }
    if (!e) {
      out.push_back(ScaledInterval{Ordinal(), x, successor(x)});
      cursor = next;
      continue;
    }
    Ordinal step = step_of(*e);
    Ordinal c = x;
    while (true) {
      const Segment& s = set.segment_of(c);
      if (s.scale == *e) {
        Ordinal h = round_up_to_multiple(s.hi, *e);
        auto z = set.first_at_or_after(s.hi);
        if (z && *z == h) {
          c = h;
          continue;
        }
        out.push_back(ScaledInterval{*e, x, h});
        cursor = z;
        break;
      }
      Ordinal m = add(c, step);
      auto n = set.next_after(c);
      if (n && *n == m) {
        c = m;
        continue;
      }
      out.push_back(ScaledInterval{*e, x, m});
      cursor = n;
      break;
    }
  }
  pieces_ = std::move(out);
}

bool OrdSet::contains(const Ordinal& x) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const ScaledInterval& p) { return p.contains(x); });
}

std::optional<Ordinal> OrdSet::min() const {
  if (pieces_.empty()) return std::nullopt;
  return pieces_.front().lo;
}

std::vector<Ordinal> OrdSet::first_k(std::size_t k) const {
  std::vector<Ordinal> out;
  for (const auto& p : pieces_) {
    Ordinal step = step_of(p.scale);
    for (Ordinal x = p.lo; x < p.hi && out.size() < k; x = add(x, step)) out.push_back(x);
    if (out.size() == k) break;
  }
  return out;
}

Ordinal OrdSet::order_type() const {
  Ordinal total;
  for (const auto& p : pieces_) total = add(total, p.length());
  return total;
}

std::optional<Ordinal> OrdSet::element_at(const Ordinal& idx) const {
  Ordinal remaining = idx;
  for (const auto& p : pieces_) {
    Ordinal len = p.length();
    if (remaining < len) return omega_power_mul(p.scale, add(p.factor_lo(), remaining));
    remaining = *left_subtract(len, remaining);
  }
  return std::nullopt;
}

std::optional<Ordinal> OrdSet::sup_before(const Ordinal& idx) const {
  Ordinal remaining = idx;
  Ordinal sup_so_far;
  for (const auto& p : pieces_) {
    if (remaining.is_zero()) return sup_so_far;
    Ordinal len = p.length();
    if (remaining <= len) {
      Ordinal offset = remaining.is_successor() ? predecessor(remaining) : remaining;
      return omega_power_mul(p.scale, add(p.factor_lo(), offset));
    }
    remaining = *left_subtract(len, remaining);
    sup_so_far = len.is_successor() ? *last_point(p) : p.hi;
  }
  if (remaining.is_zero()) return sup_so_far;
  return std::nullopt;
}

std::optional<std::uint64_t> OrdSet::count_below(const Ordinal& x) const {
  std::uint64_t count = 0;
  for (const auto& p : pieces_) {
    if (p.lo >= x) break;
    ScaledInterval part{p.scale, p.lo, round_up_to_multiple(std::min(p.hi, x), p.scale)};
    Ordinal len = part.length();
    if (!len.is_finite()) return std::nullopt;
    count += len.to_natural();
  }
  return count;
}

// ---------------------------------------------------------------------------

namespace {
void require_same_bound(const OrdSet& a, const OrdSet& b) {
  if (a.bound() != b.bound())
    throw SetError("sets over different spaces: " + to_string(a.bound()) + " vs " + to_string(b.bound()));
}
}  // namespace

OrdSet set_union(const OrdSet& a, const OrdSet& b) {
  require_same_bound(a, b);
  std::vector<ScaledInterval> pieces = a.pieces();
  pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
  return OrdSet(a.bound(), std::move(pieces));
}

OrdSet set_intersect(const OrdSet& a, const OrdSet& b) {
  require_same_bound(a, b);
  std::vector<ScaledInterval> pieces;
  for (const auto& p : a.pieces()) {
    for (const auto& q : b.pieces()) {
      ScaledInterval r{std::max(p.scale, q.scale), std::max(p.lo, q.lo), std::min(p.hi, q.hi)};
      if (!r.empty()) pieces.push_back(std::move(r));
    }
  }
  return OrdSet(a.bound(), std::move(pieces));
}

bool is_subset(const OrdSet& a, const OrdSet& b) {
  require_same_bound(a, b);
  std::vector<Ordinal> cuts = boundaries(a.pieces(), b.pieces());
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const Ordinal& c = cuts[j];
    const Ordinal& c2 = cuts[j + 1];
    auto ea = covering_scale(a.pieces(), c, c2);
    if (!ea) continue;
    Ordinal first = round_up_to_multiple(c, *ea);
    if (first >= c2) continue;
    auto eb = covering_scale(b.pieces(), c, c2);
    if (!eb) return false;
    if (*eb <= *ea) continue;
    // b is sparser here: a may only contribute one point, which must lie in b.
    bool single = add(first, step_of(*ea)) >= c2;
    if (!single || !is_multiple_of_omega_power(first, *eb)) return false;
  }
  return true;
}

OrdSet normalize(const OrdSet& s) { return OrdSet(s.bound(), s.pieces()); }

std::optional<Ordinal> sup_first_omega(const OrdSet& s) {
  for (const auto& p : s.pieces()) {
    if (!p.length().is_finite()) return omega_power_mul(p.scale, add(p.factor_lo(), Ordinal::omega()));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

class SetParser {
 public:
  SetParser(std::string_view text, Ordinal bound) : text_(text), bound_(std::move(bound)) {}

  OrdSet run() {
    OrdSet s = union_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SetError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

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

  // Ordinal text runs until one of the delimiters at nesting depth zero.
  Ordinal ordinal(std::string_view delims) {
    skip_ws();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '(') ++depth;
      if (ch == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && delims.find(ch) != std::string_view::npos) break;
      ++pos_;
    }
    try {
      return parse_ordinal(text_.substr(start, pos_ - start));
    } catch (const OrdinalParseError& e) {
      throw SetError(e.what());
    }
  }

  OrdSet union_expr() {
    OrdSet s = intersect_expr();
    while (accept("|")) s = set_union(s, intersect_expr());
    return s;
  }

  OrdSet intersect_expr() {
    OrdSet s = primary();
    while (accept("&")) s = set_intersect(s, primary());
    return s;
  }

  OrdSet primary() {
    if (accept("[")) {
      Ordinal lo = ordinal(",");
      expect(",");
      Ordinal hi = ordinal(")");
      expect(")");
      return OrdSet::interval(bound_, lo, hi);
    }
    if (accept("{")) {
      OrdSet s = OrdSet::empty(bound_);
      if (accept("}")) return s;
      do {
        s = set_union(s, OrdSet::singleton(bound_, ordinal(",}")));
      } while (accept(","));
      expect("}");
      return s;
    }
    if (accept("scaled")) {
      expect("(");
      Ordinal e = ordinal(",");
      expect(",");
      Ordinal a = ordinal(",");
      expect(",");
      Ordinal b = ordinal(")");
      expect(")");
      return OrdSet::scaled(bound_, e, a, b);
    }
    if (accept("X")) return OrdSet::whole(bound_);
    if (accept("(")) {
      OrdSet s = union_expr();
      expect(")");
      return s;
    }
    fail("expected a set expression");
  }

  std::string_view text_;
  Ordinal bound_;
  std::size_t pos_ = 0;
};

}  // namespace

OrdSet parse_ordset(std::string_view text, std::optional<Ordinal> bound) {
  std::size_t at = text.find("@L=");
  if (at != std::string_view::npos) {
    try {
      bound = parse_ordinal(text.substr(at + 3));
    } catch (const OrdinalParseError& e) {
      throw SetError(e.what());
    }
    text = text.substr(0, at);
  }
  return SetParser(text, bound.value_or(OrdSet::default_bound())).run();
}

std::string to_string(const ScaledInterval& p) {
  if (p.scale.is_zero()) {
    if (is_singleton(p)) return "{" + to_string(p.lo) + "}";
    return "[" + to_string(p.lo) + ", " + to_string(p.hi) + ")";
  }
  return "scaled(" + to_string(p.scale) + ", " + to_string(p.factor_lo()) + ", " + to_string(p.factor_hi()) + ")";
}

std::string to_string(const OrdSet& s) {
  if (s.is_empty()) return "{}";
  std::string out;
  for (const auto& p : s.pieces()) {
    if (!out.empty()) out += " | ";
    out += to_string(p);
  }
  return out;
}

}  // namespace glpkit
