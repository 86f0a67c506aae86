#include "glpkit/ordinal.hpp"

#include <cctype>
#include <limits>

namespace glpkit {

Ordinal::Ordinal(std::uint64_t n) {
  if (n != 0) terms_.push_back(OrdinalTerm{Ordinal(), n});
}

Ordinal Ordinal::omega() { return omega_power(Ordinal(1)); }

Ordinal Ordinal::omega_power(Ordinal e, std::uint64_t c) {
  Ordinal o;
  if (c != 0) o.terms_.push_back(OrdinalTerm{std::move(e), c});
  return o;
}

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }
bool Ordinal::is_successor() const { return !terms_.empty() && terms_.back().exponent.is_zero(); }
bool Ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exponent.is_zero(); }

std::uint64_t Ordinal::to_natural() const {
  if (!is_finite()) throw std::domain_error("ordinal " + to_string(*this) + " is not finite");
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

Ordinal Ordinal::smallest_exponent() const { return terms_.empty() ? Ordinal() : terms_.back().exponent; }
Ordinal Ordinal::leading_exponent() const { return terms_.empty() ? Ordinal() : terms_.front().exponent; }

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].exponent <=> b.terms_[i].exponent; c != 0) return c;
    if (auto c = a.terms_[i].coefficient <=> b.terms_[i].coefficient; c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

namespace {
std::uint64_t checked_sum(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) throw std::overflow_error("ordinal coefficient overflow");
  return a + b;
}
}  // namespace

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms_.front().exponent;
  Ordinal out;
  // Terms of a below b's leading exponent are absorbed.
  for (const auto& t : a.terms_) {
    if (t.exponent > lead) {
      out.terms_.push_back(t);
    } else if (t.exponent == lead) {
      out.terms_.push_back(OrdinalTerm{lead, checked_sum(t.coefficient, b.terms_.front().coefficient)});
      out.terms_.insert(out.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
      return out;
    } else {
      break;
    }
  }
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  return out;
}

Ordinal successor(const Ordinal& o) { return add(o, Ordinal(1)); }

Ordinal predecessor(const Ordinal& o) {
  if (!o.is_successor()) throw std::domain_error("ordinal " + to_string(o) + " has no predecessor");
  Ordinal out = o;
  if (--out.terms_.back().coefficient == 0) out.terms_.pop_back();
  return out;
}

Ordinal omega_power_mul(const Ordinal& e, const Ordinal& o) {
  Ordinal out;
  out.terms_.reserve(o.terms_.size());
  for (const auto& t : o.terms_) out.terms_.push_back(OrdinalTerm{add(e, t.exponent), t.coefficient});
  return out;
}

std::optional<Ordinal> left_subtract(const Ordinal& a, const Ordinal& b) {
  if (a > b) return std::nullopt;
  std::size_t i = 0;
  while (i < a.terms_.size() && i < b.terms_.size() && a.terms_[i] == b.terms_[i]) ++i;
  Ordinal out;
  if (i == a.terms_.size()) {
    out.terms_.assign(b.terms_.begin() + static_cast<std::ptrdiff_t>(i), b.terms_.end());
    return out;
  }
  // a <= b and they differ at i, so b's term i is larger.
  const auto& ta = a.terms_[i];
  const auto& tb = b.terms_[i];
  if (ta.exponent == tb.exponent) {
    out.terms_.push_back(OrdinalTerm{tb.exponent, tb.coefficient - ta.coefficient});
    out.terms_.insert(out.terms_.end(), b.terms_.begin() + static_cast<std::ptrdiff_t>(i) + 1, b.terms_.end());
  } else {
    out.terms_.assign(b.terms_.begin() + static_cast<std::ptrdiff_t>(i), b.terms_.end());
  }
  return out;
}

std::optional<Ordinal> left_divide_by_omega_power(const Ordinal& e, const Ordinal& o) {
  Ordinal out;
  for (const auto& t : o.terms_) {
    auto d = left_subtract(e, t.exponent);
    if (!d) return std::nullopt;
    out.terms_.push_back(OrdinalTerm{std::move(*d), t.coefficient});
  }
  return out;
}

bool is_multiple_of_omega_power(const Ordinal& o, const Ordinal& e) {
  return o.is_zero() || o.smallest_exponent() >= e;
}

Ordinal round_up_to_multiple(const Ordinal& o, const Ordinal& e) {
  if (is_multiple_of_omega_power(o, e)) return o;
  // Drop the terms below w^e and add w^e.
  Ordinal head;
  for (const auto& t : o.terms()) {
    if (t.exponent < e) break;
    head = add(head, Ordinal::omega_power(t.exponent, t.coefficient));
  }
  return add(head, Ordinal::omega_power(e));
}

// ---------------------------------------------------------------------------

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal run() {
    Ordinal o = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return o;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw OrdinalParseError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint64_t natural() {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail("natural out of range");
      v = v * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("expected a natural number");
    return v;
  }

  Ordinal sum() {
    Ordinal o = term();
    while (accept('+')) o = add(o, term());
    return o;
  }

  Ordinal term() {
    skip_ws();
    if (accept('w')) {
      Ordinal exponent(1);
      if (accept('^')) {
        if (accept('(')) {
          exponent = sum();
          if (!accept(')')) fail("expected ')'");
        } else if (accept('w')) {
          exponent = Ordinal::omega();
        } else {
          exponent = Ordinal(natural());
        }
      }
      std::uint64_t c = 1;
      if (accept('*')) c = natural();
      return Ordinal::omega_power(exponent, c);
    }
    if (accept('(')) {
      Ordinal o = sum();
      if (!accept(')')) fail("expected ')'");
      return o;
    }
    return Ordinal(natural());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).run(); }

std::string to_string(const Ordinal& o) {
  if (o.is_zero()) return "0";
  std::string out;
  for (const auto& t : o.terms()) {
    if (!out.empty()) out += '+';
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent != Ordinal(1)) {
      if (t.exponent.is_finite())
        out += '^' + to_string(t.exponent);
      else
        out += "^(" + to_string(t.exponent) + ')';
    }
    if (t.coefficient != 1) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

}  // namespace glpkit
