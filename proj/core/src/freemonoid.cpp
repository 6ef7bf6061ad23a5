#include "condmon/freemonoid.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "condmon/errors.hpp"
#include "text.hpp"

namespace condmon {

namespace {

void require_same_dimension(const ExponentVector& a, const ExponentVector& b) {
  if (a.dimension() != b.dimension()) {
    fail(ErrorKind::kDimensionMismatch,
         to_string(a) + " vs " + to_string(b));
  }
}

}  // namespace

ExponentVector::ExponentVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
  for (const auto c : coords_) {
    if (c < 0) fail(ErrorKind::kBadParameters, "negative exponent in " + detail::join_ints(coords_));
  }
}

ExponentVector::ExponentVector(std::initializer_list<std::int64_t> coords)
    : ExponentVector(std::vector<std::int64_t>(coords)) {}

bool ExponentVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
}

ExponentVector ExponentVector::unit(std::size_t s, std::size_t i, std::int64_t multiple) {
  std::vector<std::int64_t> c(s, 0);
  c.at(i) = multiple;
  return ExponentVector(std::move(c));
}

std::int64_t length(const ExponentVector& a) {
  return std::accumulate(a.coords().begin(), a.coords().end(), std::int64_t{0});
}

bool divides(const ExponentVector& a, const ExponentVector& b) {
  require_same_dimension(a, b);
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

ExponentVector add(const ExponentVector& a, const ExponentVector& b) {
  require_same_dimension(a, b);
  std::vector<std::int64_t> c(a.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (__builtin_add_overflow(a[i], b[i], &c[i])) {
      fail(ErrorKind::kBadParameters, "exponent overflow adding " + to_string(a) + " and " +
                                          to_string(b));
    }
  }
  return ExponentVector(std::move(c));
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) { return add(a, b); }

std::optional<ExponentVector> checked_subtract(const ExponentVector& b, const ExponentVector& a) {
  if (!divides(a, b)) return std::nullopt;
  std::vector<std::int64_t> c(a.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = b[i] - a[i];
  return ExponentVector(std::move(c));
}

ExponentVector meet(const ExponentVector& a, const ExponentVector& b) {
  require_same_dimension(a, b);
  std::vector<std::int64_t> c(a.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::min(a[i], b[i]);
  return ExponentVector(std::move(c));
}

ExponentVector join(const ExponentVector& a, const ExponentVector& b) {
  require_same_dimension(a, b);
  std::vector<std::int64_t> c(a.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::max(a[i], b[i]);
  return ExponentVector(std::move(c));
}

std::vector<ExponentVector> dickson_min(std::span<const ExponentVector> points) {
  std::vector<ExponentVector> sorted(points.begin(), points.end());
  // A dominating vector has strictly larger length, so a length-sorted sweep
  // only needs to compare against minima already kept.
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const auto la = length(a), lb = length(b);
    return la != lb ? la < lb : a < b;
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<ExponentVector> minima;
  for (const auto& p : sorted) {
    const bool dominated =
        std::any_of(minima.begin(), minima.end(), [&](const auto& m) { return divides(m, p); });
    if (!dominated) minima.push_back(p);
  }
  std::sort(minima.begin(), minima.end());
  return minima;
}

Box Box::cube(std::size_t s, std::int64_t side) {
  return Box(ExponentVector(std::vector<std::int64_t>(s, side)));
}

std::uint64_t Box::cardinality() const {
  std::uint64_t n = 1;
  for (const auto u : upper_.coords()) {
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(u + 1), &n)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return n;
}

bool Box::contains(const ExponentVector& v) const { return divides(v, upper_); }

std::vector<ExponentVector> divisor_enumeration(const ExponentVector& a, std::uint64_t cap) {
  return box_enumeration(Box(a), cap);
}

std::vector<ExponentVector> box_enumeration(const Box& box, std::uint64_t cap) {
  const BoxIndex index(box.upper(), cap);
  std::vector<ExponentVector> out;
  out.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) out.push_back(index.vector_at(i));
  return out;
}

BoxIndex::BoxIndex(const ExponentVector& upper, std::uint64_t cap) : upper_(upper) {
  const auto card = Box(upper).cardinality();
  if (card > cap) {
    fail(ErrorKind::kWindowTooLarge, "box " + to_string(upper) + " has " +
                                         std::to_string(card) + " points, cap is " +
                                         std::to_string(cap));
  }
  const std::size_t s = upper.dimension();
  radix_.resize(s);
  stride_.resize(s);
  std::size_t stride = 1;
  for (std::size_t i = s; i-- > 0;) {
    radix_[i] = static_cast<std::size_t>(upper[i]) + 1;
    stride_[i] = stride;
    stride *= radix_[i];
  }
  size_ = static_cast<std::size_t>(card);
}

std::size_t BoxIndex::index(const ExponentVector& v) const { return index(v.coords()); }

std::size_t BoxIndex::index(std::span<const std::int64_t> coords) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) idx += static_cast<std::size_t>(coords[i]) * stride_[i];
  return idx;
}

ExponentVector BoxIndex::vector_at(std::size_t idx) const {
  std::vector<std::int64_t> c;
  decode(idx, c);
  return ExponentVector(std::move(c));
}

void BoxIndex::decode(std::size_t idx, std::vector<std::int64_t>& out) const {
  out.resize(radix_.size());
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    out[i] = static_cast<std::int64_t>(idx / stride_[i]);
    idx %= stride_[i];
  }
}

ExponentVector parse_vector(std::string_view text) {
  return ExponentVector(detail::parse_tuple(text));
}

std::string to_string(const ExponentVector& v) {
  return detail::join_ints({v.coords().begin(), v.coords().end()});
}

std::size_t hash_value(const ExponentVector& v) noexcept {
  std::size_t h = 0x3c6ef372;
  for (const auto c : v.coords()) h = detail::hash_combine(h, static_cast<std::size_t>(c));
  return h;
}

}  // namespace condmon
