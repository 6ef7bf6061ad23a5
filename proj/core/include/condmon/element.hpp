#ifndef CONDMON_ELEMENT_HPP
#define CONDMON_ELEMENT_HPP

#include <compare>
#include <optional>
#include <string>

#include "condmon/freemonoid.hpp"
#include "condmon/group.hpp"

namespace condmon {

/// Element of F = E x N_0^s: a unit of the finite group E together with an
/// exponent vector. Monoids without units use the trivial group.
struct MonoidElement {
  GroupElement unit;
  ExponentVector vec;

  bool is_identity() const { return unit.is_zero() && vec.is_zero(); }

  friend bool operator==(const MonoidElement&, const MonoidElement&) = default;
  /// Canonical order: unit residues first, then coordinates.
  friend std::strong_ordering operator<=>(const MonoidElement& a, const MonoidElement& b) {
    if (auto c = a.unit <=> b.unit; c != 0) return c;
    return a.vec <=> b.vec;
  }
};

MonoidElement combine(const MonoidElement& a, const MonoidElement& b);
/// a / b in F, if b divides a there.
std::optional<MonoidElement> checked_divide(const MonoidElement& a, const MonoidElement& b);

/// "(3,3)" without units, "(1)|(3,3)" with a non-trivial unit group.
std::string to_string(const MonoidElement& x);

}  // namespace condmon

template <>
struct std::hash<condmon::MonoidElement> {
  std::size_t operator()(const condmon::MonoidElement& x) const noexcept {
    return condmon::hash_value(x.vec) * 31 + condmon::hash_value(x.unit);
  }
};

#endif  // CONDMON_ELEMENT_HPP
