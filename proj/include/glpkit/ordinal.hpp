#pragma once

// Ordinals below epsilon_0 in Cantor normal form.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace glpkit {

struct OrdinalTerm;

class Ordinal {
 public:
  Ordinal() = default;  // zero
  explicit Ordinal(std::uint64_t n);

  static Ordinal omega();
  // w^e * c; c == 0 yields zero.
  static Ordinal omega_power(Ordinal e, std::uint64_t c = 1);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const;

  // Finite value; throws if infinite.
  std::uint64_t to_natural() const;
  // Exponent of the last (smallest) term; zero for the zero ordinal.
  Ordinal smallest_exponent() const;
  // Exponent of the leading term; zero for the zero ordinal.
  Ordinal leading_exponent() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  friend Ordinal add(const Ordinal& a, const Ordinal& b);
  friend Ordinal omega_power_mul(const Ordinal& e, const Ordinal& o);
  friend std::optional<Ordinal> left_subtract(const Ordinal& a, const Ordinal& b);
  friend std::optional<Ordinal> left_divide_by_omega_power(const Ordinal& e, const Ordinal& o);
  friend Ordinal predecessor(const Ordinal& o);

  std::vector<OrdinalTerm> terms_;  // strictly decreasing exponents
};

struct OrdinalTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  friend bool operator==(const OrdinalTerm&, const OrdinalTerm&) = default;
};

class OrdinalParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal successor(const Ordinal& o);
// o - 1 for a successor o; throws otherwise.
Ordinal predecessor(const Ordinal& o);

// w^e * o.
Ordinal omega_power_mul(const Ordinal& e, const Ordinal& o);

// The unique g with a + g = b, when a <= b.
std::optional<Ordinal> left_subtract(const Ordinal& a, const Ordinal& b);

// The unique d with w^e * d = o, when o is a multiple of w^e.
std::optional<Ordinal> left_divide_by_omega_power(const Ordinal& e, const Ordinal& o);

// Multiples of w^e are zero and the ordinals whose smallest exponent is >= e.
bool is_multiple_of_omega_power(const Ordinal& o, const Ordinal& e);

// Least multiple of w^e that is >= o.
Ordinal round_up_to_multiple(const Ordinal& o, const Ordinal& e);

// Syntax: sums of terms  w^(E)*C | w^n*C | w*C | w | C  (E an ordinal).
Ordinal parse_ordinal(std::string_view text);
std::string to_string(const Ordinal& o);

}  // namespace glpkit
