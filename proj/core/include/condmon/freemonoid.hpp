#ifndef CONDMON_FREEMONOID_HPP
#define CONDMON_FREEMONOID_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace condmon {

/// Element of the free abelian monoid N_0^s, one coordinate per prime.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t s) : coords_(s, 0) {}
  explicit ExponentVector(std::vector<std::int64_t> coords);
  ExponentVector(std::initializer_list<std::int64_t> coords);

  std::size_t dimension() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::span<const std::int64_t> coords() const { return coords_; }
  bool is_zero() const;

  /// Unit vector e_i in N_0^s.
  static ExponentVector unit(std::size_t s, std::size_t i, std::int64_t multiple = 1);

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  /// Lexicographic; the canonical order for sets of vectors.
  friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  std::vector<std::int64_t> coords_;
};

/// Sum of coordinates, |a|_F.
std::int64_t length(const ExponentVector& a);
/// Componentwise a <= b. DimensionMismatch on differing s.
bool divides(const ExponentVector& a, const ExponentVector& b);
/// Overflow-checked componentwise sum.
ExponentVector add(const ExponentVector& a, const ExponentVector& b);
ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
/// b - a when a divides b.
std::optional<ExponentVector> checked_subtract(const ExponentVector& b, const ExponentVector& a);
/// Componentwise minimum (the gcd in F).
ExponentVector meet(const ExponentVector& a, const ExponentVector& b);
/// Componentwise maximum (the lcm in F).
ExponentVector join(const ExponentVector& a, const ExponentVector& b);

/// Componentwise-minimal elements of `points`, sorted lexicographically and
/// deduplicated. Every input dominates some output.
std::vector<ExponentVector> dickson_min(std::span<const ExponentVector> points);

/// The finite window {v : 0 <= v <= upper}.
class Box {
 public:
  Box() = default;
  explicit Box(ExponentVector upper) : upper_(std::move(upper)) {}
  static Box cube(std::size_t s, std::int64_t side);

  const ExponentVector& upper() const { return upper_; }
  std::size_t dimension() const { return upper_.dimension(); }
  /// prod (upper_i + 1); saturates at UINT64_MAX.
  std::uint64_t cardinality() const;
  bool contains(const ExponentVector& v) const;

 private:
  ExponentVector upper_;
};

/// All divisors of `a` in lexicographic order. WindowTooLarge above `cap`.
std::vector<ExponentVector> divisor_enumeration(const ExponentVector& a,
                                                std::uint64_t cap = 1'000'000);
/// All points of the box in lexicographic order. WindowTooLarge above `cap`.
std::vector<ExponentVector> box_enumeration(const Box& box, std::uint64_t cap = 1'000'000);

/// Mixed-radix indexing of a box. Index order refines divisibility: u <= v
/// implies index(u) <= index(v), and index(v - u) = index(v) - index(u).
class BoxIndex {
 public:
  BoxIndex() = default;
  BoxIndex(const ExponentVector& upper, std::uint64_t cap);

  std::size_t size() const { return size_; }
  std::size_t dimension() const { return radix_.size(); }
  const ExponentVector& upper() const { return upper_; }
  std::size_t index(const ExponentVector& v) const;
  std::size_t index(std::span<const std::int64_t> coords) const;
  ExponentVector vector_at(std::size_t idx) const;
  /// Decodes into `out` without allocating.
  void decode(std::size_t idx, std::vector<std::int64_t>& out) const;
  std::size_t stride(std::size_t i) const { return stride_[i]; }

 private:
  ExponentVector upper_;
  std::vector<std::size_t> radix_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 0;
};

/// "(a1,...,as)".
ExponentVector parse_vector(std::string_view text);
std::string to_string(const ExponentVector& v);

std::size_t hash_value(const ExponentVector& v) noexcept;

}  // namespace condmon

template <>
struct std::hash<condmon::ExponentVector> {
  std::size_t operator()(const condmon::ExponentVector& v) const noexcept {
    return condmon::hash_value(v);
  }
};

#endif  // CONDMON_FREEMONOID_HPP
