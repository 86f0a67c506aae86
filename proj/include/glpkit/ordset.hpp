#pragma once

// Symbolic subsets of an ordinal [0, L).
//
// A set is a finite union of scaled intervals
//     scaled(e, a, b) = { w^e * g : a <= g < b }
// which, because left multiplication by w^e is strictly increasing, is the
// same as the multiples of w^e lying in [w^e*a, w^e*b).  The family is
// closed under union, intersection and both derivative operators of the
// ordinal space, which is why it is used as the representation.
//
// Sets are kept in a canonical form (see OrdSet::normalize): every element
// of a piece lies below every element of the next piece, and two sets are
// equal exactly when their piece lists are.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glpkit/ordinal.hpp"

namespace glpkit {

// Multiples of w^scale in [lo, hi); lo and hi are themselves multiples of w^scale.
struct ScaledInterval {
  Ordinal scale;
  Ordinal lo;
  Ordinal hi;

  // Build from factor bounds, i.e. { w^e * g : a <= g < b }.
  static ScaledInterval from_factors(const Ordinal& e, const Ordinal& a, const Ordinal& b);

  bool empty() const { return lo >= hi; }
  bool contains(const Ordinal& x) const;
  Ordinal factor_lo() const;
  Ordinal factor_hi() const;
  // Order type of the piece (b - a in factor terms).
  Ordinal length() const;

  friend bool operator==(const ScaledInterval&, const ScaledInterval&) = default;
};

class SetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OrdSet {
 public:
  static Ordinal default_bound();  // w^w

  explicit OrdSet(Ordinal bound = default_bound());
  OrdSet(Ordinal bound, std::vector<ScaledInterval> pieces);

  static OrdSet empty(Ordinal bound = default_bound());
  static OrdSet whole(Ordinal bound = default_bound());
  static OrdSet interval(Ordinal bound, Ordinal lo, Ordinal hi);
  static OrdSet singleton(Ordinal bound, Ordinal x);
  static OrdSet scaled(Ordinal bound, const Ordinal& e, const Ordinal& a, const Ordinal& b);

  const Ordinal& bound() const { return bound_; }
  const std::vector<ScaledInterval>& pieces() const { return pieces_; }

  bool is_empty() const { return pieces_.empty(); }
  bool contains(const Ordinal& x) const;
  std::optional<Ordinal> min() const;
  // The k least elements (fewer when the set is smaller).
  std::vector<Ordinal> first_k(std::size_t k) const;
  Ordinal order_type() const;
  // The element with (0-based) index idx in increasing order.
  std::optional<Ordinal> element_at(const Ordinal& idx) const;
  // sup of the elements with index < idx; nullopt if the set has fewer than idx elements.
  std::optional<Ordinal> sup_before(const Ordinal& idx) const;
  // Number of elements below x, nullopt when infinite.
  std::optional<std::uint64_t> count_below(const Ordinal& x) const;

  friend bool operator==(const OrdSet&, const OrdSet&) = default;

 private:
  void normalize();

  Ordinal bound_;
  std::vector<ScaledInterval> pieces_;
};

OrdSet set_union(const OrdSet& a, const OrdSet& b);
OrdSet set_intersect(const OrdSet& a, const OrdSet& b);
bool is_subset(const OrdSet& a, const OrdSet& b);
// Re-run canonicalization on an arbitrary piece list.
OrdSet normalize(const OrdSet& s);

// Supremum of the first w elements, nullopt for finite sets.
std::optional<Ordinal> sup_first_omega(const OrdSet& s);

// Set syntax: [a,b) | {a, ...} | scaled(e,a,b) | X | S '|' S | S '&' S | (S),
// optionally followed by "@L=<ordinal>".  Without an annotation the given
// bound (or w^w) is used.
OrdSet parse_ordset(std::string_view text, std::optional<Ordinal> bound = std::nullopt);
std::string to_string(const OrdSet& s);
std::string to_string(const ScaledInterval& p);

}  // namespace glpkit
