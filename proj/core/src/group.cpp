#include "condmon/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "condmon/errors.hpp"
#include "text.hpp"

namespace condmon {

namespace {

std::int64_t reduce(std::int64_t r, std::int64_t n) {
  const std::int64_t m = r % n;
  return m < 0 ? m + n : m;
}

void require_same_group(const GroupElement& a, const GroupElement& b) {
  if (!(a.group() == b.group())) {
    fail(ErrorKind::kGroupMismatch,
         "elements of " + a.group().to_string() + " and " + b.group().to_string());
  }
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup()
    : orders_(std::make_shared<const std::vector<std::int64_t>>()) {}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> cyclic_orders) {
  for (const auto n : cyclic_orders) {
    if (n < 1) fail(ErrorKind::kBadParameters, "cyclic order must be >= 1");
  }
  orders_ = std::make_shared<const std::vector<std::int64_t>>(std::move(cyclic_orders));
}

std::uint64_t FiniteAbelianGroup::cardinality() const {
  std::uint64_t total = 1;
  for (const auto n : *orders_) {
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(n), &total)) {
      fail(ErrorKind::kBadParameters, "group cardinality overflows");
    }
  }
  return total;
}

std::int64_t FiniteAbelianGroup::exponent() const {
  std::int64_t e = 1;
  for (const auto n : *orders_) {
    const std::int64_t g = std::gcd(e, n);
    if (__builtin_mul_overflow(e / g, n, &e)) {
      fail(ErrorKind::kBadParameters, "group exponent overflows");
    }
  }
  return e;
}

bool FiniteAbelianGroup::is_trivial() const {
  return std::all_of(orders_->begin(), orders_->end(), [](auto n) { return n == 1; });
}

GroupElement FiniteAbelianGroup::zero() const {
  return GroupElement(*this, std::vector<std::int64_t>(rank(), 0));
}

GroupElement FiniteAbelianGroup::element(std::vector<std::int64_t> residues) const {
  if (residues.size() != rank()) {
    fail(ErrorKind::kDimensionMismatch, "element " + detail::join_ints(residues) + " in " +
                                            to_string());
  }
  for (std::size_t i = 0; i < residues.size(); ++i) residues[i] = reduce(residues[i], (*orders_)[i]);
  return GroupElement(*this, std::move(residues));
}

GroupElement FiniteAbelianGroup::generator(std::size_t i) const {
  std::vector<std::int64_t> r(rank(), 0);
  r.at(i) = 1;
  return element(std::move(r));
}

std::uint64_t FiniteAbelianGroup::index_of(const GroupElement& g) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    idx = idx * static_cast<std::uint64_t>((*orders_)[i]) + static_cast<std::uint64_t>(g.residues()[i]);
  }
  return idx;
}

GroupElement FiniteAbelianGroup::element_at(std::uint64_t index) const {
  std::vector<std::int64_t> r(rank(), 0);
  for (std::size_t i = rank(); i-- > 0;) {
    const auto n = static_cast<std::uint64_t>((*orders_)[i]);
    r[i] = static_cast<std::int64_t>(index % n);
    index /= n;
  }
  return GroupElement(*this, std::move(r));
}

std::vector<GroupElement> FiniteAbelianGroup::enumerate_elements(std::uint64_t cap) const {
  const std::uint64_t n = cardinality();
  if (n > cap) {
    fail(ErrorKind::kWindowTooLarge,
         to_string() + " has " + std::to_string(n) + " elements, cap is " + std::to_string(cap));
  }
  std::vector<GroupElement> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

std::string FiniteAbelianGroup::to_string() const {
  if (orders_->empty()) return "C1";
  std::string out;
  for (std::size_t i = 0; i < orders_->size(); ++i) {
    if (i) out += 'x';
    out += 'C' + std::to_string((*orders_)[i]);
  }
  return out;
}

bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
  return a.orders_ == b.orders_ || *a.orders_ == *b.orders_;
}

bool GroupElement::is_zero() const {
  return std::all_of(residues_.begin(), residues_.end(), [](auto r) { return r == 0; });
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  return a.residues_ == b.residues_ && a.group_ == b.group_;
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  return a.residues_ <=> b.residues_;
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
  require_same_group(a, b);
  const auto orders = a.group().cyclic_orders();
  std::vector<std::int64_t> r(orders.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto s = a.residues()[i] + b.residues()[i];
    r[i] = s >= orders[i] ? s - orders[i] : s;
  }
  return a.group().element(std::move(r));
}

GroupElement neg(const GroupElement& a) {
  const auto orders = a.group().cyclic_orders();
  std::vector<std::int64_t> r(orders.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.residues()[i] == 0 ? 0 : orders[i] - a.residues()[i];
  return a.group().element(std::move(r));
}

GroupElement scalar_mul(std::int64_t k, const GroupElement& a) {
  const auto orders = a.group().cyclic_orders();
  std::vector<std::int64_t> r(orders.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto n = orders[i];
    const auto kk = reduce(k, n);
    __extension__ using wide = __int128;
    r[i] = static_cast<std::int64_t>((static_cast<wide>(kk) * a.residues()[i]) % n);
  }
  return a.group().element(std::move(r));
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) { return add(a, b); }
GroupElement operator-(const GroupElement& a, const GroupElement& b) { return add(a, neg(b)); }
GroupElement operator-(const GroupElement& a) { return neg(a); }

std::int64_t order_of(const GroupElement& a) {
  std::int64_t ord = 1;
  const auto orders = a.group().cyclic_orders();
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const auto n = orders[i];
    const auto k = n / std::gcd(a.residues()[i], n);
    ord = std::lcm(ord, k);
  }
  return ord;
}

std::vector<GroupElement> independent_elements(const FiniteAbelianGroup& g, std::size_t count,
                                               std::int64_t order) {
  if (order < 1) fail(ErrorKind::kBadParameters, "order must be >= 1");
  std::vector<GroupElement> out;
  const auto orders = g.cyclic_orders();
  for (std::size_t i = 0; i < orders.size() && out.size() < count; ++i) {
    if (orders[i] % order != 0) continue;
    out.push_back(scalar_mul(orders[i] / order, g.generator(i)));
  }
  if (out.size() < count) {
    fail(ErrorKind::kInsufficientRank, g.to_string() + " has fewer than " + std::to_string(count) +
                                           " summands of order divisible by " +
                                           std::to_string(order));
  }
  return out;
}

FiniteAbelianGroup parse_group(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) fail(ErrorKind::kParse, "empty group literal");
  std::vector<std::int64_t> orders;
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto part : detail::split(lowered, 'x')) {
    part = detail::trim(part);
    if (part.size() < 2 || part.front() != 'c') {
      fail(ErrorKind::kParse, "bad cyclic factor '" + std::string(part) + "' in '" +
                                  std::string(text) + "'");
    }
    part.remove_prefix(1);
    if (!part.empty() && part.front() == '_') part.remove_prefix(1);
    const auto n = detail::parse_int(part);
    if (n < 1) fail(ErrorKind::kParse, "cyclic order must be >= 1");
    orders.push_back(n);
  }
  return FiniteAbelianGroup(std::move(orders));
}

GroupElement parse_group_element(const FiniteAbelianGroup& g, std::string_view text) {
  text = detail::trim(text);
  if (!text.empty() && text.front() == '(') return g.element(detail::parse_tuple(text));
  const auto v = detail::parse_int(text);
  if (v == 0) return g.zero();
  if (g.rank() != 1) {
    fail(ErrorKind::kParse, "bare integer element needs a cyclic group, got " + g.to_string());
  }
  return g.element({v});
}

std::string to_string(const GroupElement& a) {
  return detail::join_ints({a.residues().begin(), a.residues().end()});
}

std::size_t hash_value(const GroupElement& a) noexcept {
  std::size_t h = 0x51ed27;
  for (const auto r : a.residues()) h = detail::hash_combine(h, static_cast<std::size_t>(r));
  return h;
}

}  // namespace condmon
