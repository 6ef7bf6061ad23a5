#ifndef CONDMON_GROUP_HPP
#define CONDMON_GROUP_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace condmon {

class GroupElement;

/// A finite abelian group presented as C_{n_1} + ... + C_{n_r}. The
/// presentation is taken as given: no divisibility chain is required and no
/// normal form is computed. An empty list of orders is the trivial group.
///
/// Copies share the order list, so groups are cheap to pass by value.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup();
  explicit FiniteAbelianGroup(std::vector<std::int64_t> cyclic_orders);

  std::span<const std::int64_t> cyclic_orders() const { return *orders_; }
  std::size_t rank() const { return orders_->size(); }

  /// Product of the cyclic orders; throws BadParameters on overflow.
  std::uint64_t cardinality() const;
  /// lcm of the cyclic orders.
  std::int64_t exponent() const;
  bool is_trivial() const;

  GroupElement zero() const;
  /// Builds an element, reducing every residue into [0, n_i).
  GroupElement element(std::vector<std::int64_t> residues) const;
  /// The standard generator of summand `i`.
  GroupElement generator(std::size_t i) const;

  /// Mixed-radix index of an element, in [0, cardinality()).
  std::uint64_t index_of(const GroupElement& g) const;
  GroupElement element_at(std::uint64_t index) const;

  /// All elements in index order. Exceeding `cap` raises WindowTooLarge.
  std::vector<GroupElement> enumerate_elements(std::uint64_t cap = 1'000'000) const;

  /// "C2xC4"; the trivial group prints as "C1".
  std::string to_string() const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

 private:
  std::shared_ptr<const std::vector<std::int64_t>> orders_;
};

/// Element of a FiniteAbelianGroup, stored in canonical (reduced) form so
/// that structural equality is group equality.
class GroupElement {
 public:
  /// The zero of the trivial group.
  GroupElement() = default;

  const FiniteAbelianGroup& group() const { return group_; }
  std::span<const std::int64_t> residues() const { return residues_; }
  bool is_zero() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);
  /// Lexicographic on residues; the canonical total order used for multisets.
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);

 private:
  friend class FiniteAbelianGroup;
  GroupElement(FiniteAbelianGroup group, std::vector<std::int64_t> residues)
      : group_(std::move(group)), residues_(std::move(residues)) {}

  FiniteAbelianGroup group_;
  std::vector<std::int64_t> residues_;
};

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupElement& a);
GroupElement scalar_mul(std::int64_t k, const GroupElement& a);
GroupElement operator+(const GroupElement& a, const GroupElement& b);
GroupElement operator-(const GroupElement& a, const GroupElement& b);
GroupElement operator-(const GroupElement& a);

/// Least k >= 1 with k*a = 0.
std::int64_t order_of(const GroupElement& a);

/// `count` elements of exact order `order`, each a multiple of the generator
/// of a distinct summand, hence independent. InsufficientRank if fewer than
/// `count` summands have order divisible by `order`.
std::vector<GroupElement> independent_elements(const FiniteAbelianGroup& g, std::size_t count,
                                               std::int64_t order);

/// Parses "C2xC2xC4" (case-insensitive).
FiniteAbelianGroup parse_group(std::string_view text);
/// Parses "(1,0,3)"; a bare integer is accepted for rank-one groups.
GroupElement parse_group_element(const FiniteAbelianGroup& g, std::string_view text);
std::string to_string(const GroupElement& a);

std::size_t hash_value(const GroupElement& a) noexcept;

}  // namespace condmon

template <>
struct std::hash<condmon::GroupElement> {
  std::size_t operator()(const condmon::GroupElement& a) const noexcept {
    return condmon::hash_value(a);
  }
};

#endif  // CONDMON_GROUP_HPP
