#include "condmon/zerosum.hpp"

#include <algorithm>
#include <set>

#include "condmon/errors.hpp"
#include "text.hpp"

namespace condmon {

namespace {

constexpr std::uint64_t kGroupCap = std::uint64_t{1} << 20;

std::size_t checked_order(const FiniteAbelianGroup& g) {
  const auto n = g.cardinality();
  if (n > kGroupCap) {
    fail(ErrorKind::kWindowTooLarge, "group " + g.to_string() + " is too large for subsum search");
  }
  return static_cast<std::size_t>(n);
}

/// r -> index(element_at(r) + g) for every index r.
std::vector<std::size_t> translation(const FiniteAbelianGroup& group, const GroupElement& g) {
  const auto orders = group.cyclic_orders();
  const std::size_t n = checked_order(group);
  std::vector<std::size_t> out(n);
  std::vector<std::int64_t> digits(orders.size(), 0);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      idx = idx * static_cast<std::size_t>(orders[i]) +
            static_cast<std::size_t>((digits[i] + g.residues()[i]) % orders[i]);
    }
    out[r] = idx;
    for (std::size_t i = orders.size(); i-- > 0;) {
      if (++digits[i] < orders[i]) break;
      digits[i] = 0;
    }
  }
  return out;
}

/// Non-empty subsums reachable so far, as flags over group indices.
class Subsums {
 public:
  explicit Subsums(std::size_t n) : reach_(n, 0) {}

  /// Extends by one more copy of an element with the given index and
  /// translation table. Returns false once zero becomes a subsum.
  bool push(std::size_t g, const std::vector<std::size_t>& shift) {
    std::vector<char> next = reach_;
    next[g] = 1;
    for (std::size_t r = 0; r < reach_.size(); ++r) {
      if (reach_[r]) next[shift[r]] = 1;
    }
    reach_ = std::move(next);
    return reach_[0] == 0;
  }

 private:
  std::vector<char> reach_;
};

void check_length(const GSequence& s, const Budget& budget) {
  if (s.length() > budget.sequence_length_cap) {
    fail(ErrorKind::kBudgetExceeded, "sequence of length " + std::to_string(s.length()) +
                                         " exceeds the length cap " +
                                         std::to_string(budget.sequence_length_cap));
  }
}

/// Zero-sum free sequences over the support in non-decreasing order of
/// support position, with their sums. visit(T as multiplicities, length, sum).
template <typename Visit>
void for_each_zero_sum_free(const ZeroSumContext& ctx, std::int64_t max_len, const Budget& budget,
                            Visit&& visit) {
  const auto& group = ctx.group();
  const std::size_t n = checked_order(group);
  const auto& support = ctx.support();
  std::vector<std::vector<std::size_t>> shifts;
  std::vector<std::size_t> index;
  for (const auto& g : support) {
    shifts.push_back(translation(group, g));
    index.push_back(static_cast<std::size_t>(group.index_of(g)));
  }
  std::vector<std::int64_t> mult(support.size(), 0);
  std::uint64_t nodes = 0;
  const auto rec = [&](auto&& self, std::size_t start, const Subsums& reach, std::int64_t len,
                       const GroupElement& sum) -> void {
    if (++nodes > budget.enumeration_cap) {
      fail(ErrorKind::kBudgetExceeded, "zero-sum free search exceeds cap", nodes);
    }
    visit(std::as_const(mult), len, sum);
    if (len == max_len) return;
    for (std::size_t i = start; i < support.size(); ++i) {
      Subsums next = reach;
      if (!next.push(index[i], shifts[i])) continue;
      ++mult[i];
      self(self, i, next, len + 1, sum + support[i]);
      --mult[i];
    }
  };
  rec(rec, 0, Subsums(n), 0, group.zero());
}

/// Every multiset over the support of length <= max_len, as multiplicities,
/// in non-decreasing DFS order.
template <typename Visit>
void for_each_multiset(std::size_t k, std::int64_t max_len, const Budget& budget, Visit&& visit) {
  std::vector<std::int64_t> mult(k, 0);
  std::uint64_t nodes = 0;
  const auto rec = [&](auto&& self, std::size_t start, std::int64_t len) -> void {
    if (++nodes > budget.enumeration_cap) {
      fail(ErrorKind::kBudgetExceeded, "multiset enumeration exceeds cap", nodes);
    }
    visit(std::as_const(mult), len);
    if (len == max_len) return;
    for (std::size_t i = start; i < k; ++i) {
      ++mult[i];
      self(self, i, len + 1);
      --mult[i];
    }
  };
  rec(rec, 0, 0);
}

GSequence from_multiplicities(const ZeroSumContext& ctx, const std::vector<std::int64_t>& mult) {
  return ctx.to_sequence(ExponentVector(mult));
}

}  // namespace

// -------------------------------------------------------------- GSequence

GSequence::GSequence(FiniteAbelianGroup group, std::span<const GroupElement> elements)
    : group_(std::move(group)) {
  for (const auto& g : elements) add(g);
}

std::int64_t GSequence::multiplicity(const GroupElement& g) const {
  auto it = mult_.find(g);
  return it == mult_.end() ? 0 : it->second;
}

std::int64_t GSequence::length() const {
  std::int64_t n = 0;
  for (const auto& [g, k] : mult_) n += k;
  return n;
}

void GSequence::add(const GroupElement& g, std::int64_t k) {
  if (!(g.group() == group_)) {
    fail(ErrorKind::kGroupMismatch, to_string(g) + " is not an element of " + group_.to_string());
  }
  if (k < 0) fail(ErrorKind::kBadParameters, "negative multiplicity");
  if (k > 0) mult_[g] += k;
}

std::vector<GroupElement> GSequence::elements() const {
  std::vector<GroupElement> out;
  for (const auto& [g, k] : mult_) out.insert(out.end(), static_cast<std::size_t>(k), g);
  return out;
}

std::strong_ordering operator<=>(const GSequence& a, const GSequence& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  const auto ea = a.elements();
  const auto eb = b.elements();
  return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

GSequence operator*(const GSequence& a, const GSequence& b) {
  GSequence out = a;
  for (const auto& [g, k] : b.multiplicities()) out.add(g, k);
  return out;
}

GroupElement sigma(const GSequence& s) {
  GroupElement sum = s.group().zero();
  for (const auto& [g, k] : s.multiplicities()) sum = sum + scalar_mul(k, g);
  return sum;
}

bool is_zero_sum_free(const GSequence& s, const Budget& budget) {
  check_length(s, budget);
  if (s.empty()) return true;
  const auto& group = s.group();
  Subsums reach(checked_order(group));
  for (const auto& [g, k] : s.multiplicities()) {
    if (g.is_zero()) return false;
    const auto shift = translation(group, g);
    const auto idx = static_cast<std::size_t>(group.index_of(g));
    for (std::int64_t i = 0; i < k; ++i) {
      if (!reach.push(idx, shift)) return false;
    }
  }
  return true;
}

bool in_F_iota(const GSequence& s, const Budget& budget) {
  return s.empty() || !is_zero_sum_free(s, budget);
}

std::string to_string(const GSequence& s) {
  if (s.empty()) return "1";
  std::string out;
  for (const auto& [g, k] : s.multiplicities()) {
    if (!out.empty()) out += " * ";
    out += g.is_zero() ? std::string("0") : to_string(g);
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

namespace {

GroupElement parse_base(const FiniteAbelianGroup& group, std::string_view base) {
  base = detail::trim(base);
  if (!base.empty() && base.front() == '-') return -parse_base(group, base.substr(1));
  if (base == "g") {
    if (group.rank() == 0) fail(ErrorKind::kParse, "'g' needs a non-trivial group");
    return group.generator(0);
  }
  if (base.size() >= 2 && base.front() == 'e') {
    const auto i = detail::parse_int(base.substr(1));
    if (i < 1 || static_cast<std::size_t>(i) > group.rank()) {
      fail(ErrorKind::kParse, "no generator '" + std::string(base) + "' in " + group.to_string());
    }
    return group.generator(static_cast<std::size_t>(i - 1));
  }
  if (base == "0") return group.zero();
  return parse_group_element(group, base);
}

}  // namespace

GSequence parse_sequence(const FiniteAbelianGroup& g, std::string_view text) {
  GSequence out(g);
  text = detail::trim(text);
  if (text == "1" || text.empty()) return out;
  for (auto factor : detail::split(text, '*')) {
    factor = detail::trim(factor);
    std::int64_t k = 1;
    if (const auto caret = factor.rfind('^'); caret != std::string_view::npos) {
      k = detail::parse_int(factor.substr(caret + 1));
      factor = factor.substr(0, caret);
    }
    if (k < 0) fail(ErrorKind::kParse, "negative multiplicity in '" + std::string(text) + "'");
    out.add(parse_base(g, factor), k);
  }
  return out;
}

// --------------------------------------------------------- ZeroSumContext

ZeroSumContext::ZeroSumContext(FiniteAbelianGroup group, std::vector<GroupElement> support)
    : group_(std::move(group)), support_(std::move(support)) {
  if (support_.empty()) fail(ErrorKind::kBadParameters, "support must be non-empty");
  for (const auto& g : support_) {
    if (!(g.group() == group_)) {
      fail(ErrorKind::kGroupMismatch, to_string(g) + " is not an element of " + group_.to_string());
    }
  }
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
}

ZeroSumContext ZeroSumContext::full(FiniteAbelianGroup group) {
  auto elements = group.enumerate_elements(kGroupCap);
  return ZeroSumContext(std::move(group), std::move(elements));
}

std::optional<std::size_t> ZeroSumContext::position(const GroupElement& g) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), g);
  if (it == support_.end() || !(*it == g)) return std::nullopt;
  return static_cast<std::size_t>(it - support_.begin());
}

ExponentVector ZeroSumContext::to_vector(const GSequence& s) const {
  std::vector<std::int64_t> v(support_.size(), 0);
  for (const auto& [g, k] : s.multiplicities()) {
    auto pos = position(g);
    if (!pos) fail(ErrorKind::kBadParameters, to_string(g) + " is not in the support");
    v[*pos] = k;
  }
  return ExponentVector(std::move(v));
}

GSequence ZeroSumContext::to_sequence(const ExponentVector& v) const {
  if (v.dimension() != support_.size()) {
    fail(ErrorKind::kDimensionMismatch, "vector does not match the support size");
  }
  GSequence out(group_);
  for (std::size_t i = 0; i < support_.size(); ++i) out.add(support_[i], v[i]);
  return out;
}

PredicateMonoid iota_monoid(const ZeroSumContext& ctx, const Budget& budget) {
  return PredicateMonoid(
      ctx.support().size(),
      [ctx, budget](const ExponentVector& v) { return in_F_iota(ctx.to_sequence(v), budget); },
      "F_iota(" + ctx.group().to_string() + ")",
      [ctx](const ExponentVector& v) { return to_string(ctx.to_sequence(v)); });
}

// ------------------------------------------------------------- Davenport

std::vector<GSequence> minimal_zero_sum_sequences(const ZeroSumContext& ctx, std::int64_t max_len,
                                                  const Budget& budget) {
  if (max_len < 1) fail(ErrorKind::kBadParameters, "max_len must be at least 1");
  std::set<GSequence> atoms;
  for_each_zero_sum_free(ctx, max_len - 1, budget,
                         [&](const std::vector<std::int64_t>& mult, std::int64_t,
                             const GroupElement& sum) {
                           const auto closing = -sum;
                           if (!ctx.position(closing)) return;
                           auto atom = from_multiplicities(ctx, mult);
                           atom.add(closing);
                           atoms.insert(std::move(atom));
                         });
  return {atoms.begin(), atoms.end()};
}

std::int64_t max_zero_sum_free_length(const ZeroSumContext& ctx, const Budget& budget) {
  std::int64_t best = 0;
  const auto cap = static_cast<std::int64_t>(checked_order(ctx.group()));
  for_each_zero_sum_free(ctx, cap, budget,
                         [&](const std::vector<std::int64_t>&, std::int64_t len,
                             const GroupElement&) { best = std::max(best, len); });
  return best;
}

std::int64_t davenport(const ZeroSumContext& ctx, const Budget& budget) {
  std::int64_t best = 0;
  const auto cap = static_cast<std::int64_t>(checked_order(ctx.group()));
  for_each_zero_sum_free(ctx, cap, budget,
                         [&](const std::vector<std::int64_t>&, std::int64_t len,
                             const GroupElement& sum) {
                           if (ctx.position(-sum)) best = std::max(best, len + 1);
                         });
  return best;
}

std::int64_t davenport_by_enumeration(const ZeroSumContext& ctx, const Budget& budget) {
  const auto n = static_cast<std::int64_t>(checked_order(ctx.group()));
  const auto& support = ctx.support();
  std::int64_t best = 0;
  for_each_multiset(support.size(), n + 1, budget,
                    [&](const std::vector<std::int64_t>& mult, std::int64_t len) {
                      if (len == 0) return;
                      GroupElement sum = ctx.group().zero();
                      for (std::size_t i = 0; i < mult.size(); ++i) {
                        sum = sum + scalar_mul(mult[i], support[i]);
                      }
                      if (!sum.is_zero()) return;
                      // Minimal: no proper non-empty sub-multiset sums to zero.
                      std::vector<std::int64_t> take(mult.size(), 0);
                      bool minimal = true;
                      const auto rec = [&](auto&& self, std::size_t i, std::int64_t used,
                                           const GroupElement& partial) -> void {
                        if (!minimal) return;
                        if (i == mult.size()) {
                          if (used > 0 && used < len && partial.is_zero()) minimal = false;
                          return;
                        }
                        for (std::int64_t t = 0; t <= mult[i]; ++t) {
                          self(self, i + 1, used + t, partial + scalar_mul(t, support[i]));
                        }
                      };
                      rec(rec, 0, 0, ctx.group().zero());
                      if (minimal) best = std::max(best, len);
                    });
  return best;
}

// -------------------------------------------------------- F_iota atoms

std::vector<GSequence> atoms_of_F_iota(const ZeroSumContext& ctx, const GSequence& a,
                                       const Budget& budget) {
  const auto oracle = iota_monoid(ctx, budget);
  std::vector<GSequence> out;
  for (const auto& atom : oracle.atoms_dividing(oracle.make(ctx.to_vector(a)))) {
    out.push_back(ctx.to_sequence(atom.vec));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t iota_atom_length_bound(const ZeroSumContext& ctx, const Budget& budget) {
  return davenport(ctx, budget) + max_zero_sum_free_length(ctx, budget);
}

std::vector<GSequence> global_atoms_F_iota(const ZeroSumContext& ctx, const Budget& budget) {
  const auto bound = iota_atom_length_bound(ctx, budget);
  const auto oracle = iota_monoid(ctx, budget);
  const auto& group = ctx.group();
  const std::size_t n = checked_order(group);
  const auto& support = ctx.support();
  std::vector<std::vector<std::size_t>> shifts;
  std::vector<std::size_t> index;
  for (const auto& g : support) {
    shifts.push_back(translation(group, g));
    index.push_back(static_cast<std::size_t>(group.index_of(g)));
  }
  // A non-atom T1 T2 of F_iota stays a non-atom under extension, as T2 g is
  // still not zero-sum free. So the search only grows zero-sum free
  // sequences and atoms.
  std::vector<GSequence> out;
  std::vector<std::int64_t> mult(support.size(), 0);
  std::uint64_t nodes = 0;
  const auto rec = [&](auto&& self, std::size_t start, const Subsums& reach, bool free,
                       std::int64_t len) -> void {
    if (++nodes > budget.enumeration_cap) {
      fail(ErrorKind::kBudgetExceeded, "F_iota atom search exceeds cap", nodes);
    }
    if (!free) {
      const auto x = oracle.make(ExponentVector(mult));
      if (!oracle.is_atom(x)) return;
      auto seq = ctx.to_sequence(x.vec);
      if (len > bound) {
        fail(ErrorKind::kBoundAttained, "F_iota atom " + to_string(seq) +
                                            " exceeds the length bound " + std::to_string(bound));
      }
      out.push_back(std::move(seq));
    }
    if (len == bound + 1) return;
    for (std::size_t i = start; i < support.size(); ++i) {
      Subsums next = reach;
      const bool still_free = free && next.push(index[i], shifts[i]);
      ++mult[i];
      self(self, i, next, still_free, len + 1);
      --mult[i];
    }
  };
  rec(rec, 0, Subsums(n), true, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------- LabeledPrimes

namespace {

std::vector<GroupElement> label_support(const std::map<std::string, GroupElement>& labels,
                                        const std::optional<std::vector<GroupElement>>& support) {
  if (support) return *support;
  std::vector<GroupElement> out;
  for (const auto& [name, g] : labels) out.push_back(g);
  return out;
}

}  // namespace

LabeledPrimes::LabeledPrimes(FiniteAbelianGroup group, std::map<std::string, GroupElement> labels,
                             std::optional<std::vector<GroupElement>> support)
    : group_(group), ctx_(group, label_support(labels, support)) {
  if (labels.empty()) fail(ErrorKind::kBadParameters, "at least one prime is required");
  for (auto& [name, g] : labels) {
    if (name.empty() || name == "1") fail(ErrorKind::kBadParameters, "invalid prime name '" + name + "'");
    if (!ctx_.position(g)) {
      fail(ErrorKind::kBadParameters, "label " + to_string(g) + " of prime " + name +
                                          " lies outside the support");
    }
    names_.push_back(name);
    labels_.push_back(g);
  }
}

std::size_t LabeledPrimes::index_of(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) {
    fail(ErrorKind::kUnknownPrime, "unknown prime '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - names_.begin());
}

ExponentVector parse_prime_product(const LabeledPrimes& lp, std::string_view text) {
  std::vector<std::int64_t> v(lp.prime_count(), 0);
  text = detail::trim(text);
  if (text == "1" || text.empty()) return ExponentVector(std::move(v));
  for (auto factor : detail::split(text, '*')) {
    factor = detail::trim(factor);
    std::int64_t k = 1;
    if (const auto caret = factor.rfind('^'); caret != std::string_view::npos) {
      k = detail::parse_int(factor.substr(caret + 1));
      factor = detail::trim(factor.substr(0, caret));
    }
    if (k < 0) fail(ErrorKind::kParse, "negative exponent in '" + std::string(text) + "'");
    v[lp.index_of(factor)] += k;
  }
  return ExponentVector(std::move(v));
}

std::string format_prime_product(const LabeledPrimes& lp, const ExponentVector& a) {
  std::string out;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += " * ";
    out += lp.names()[i];
    if (a[i] != 1) out += "^" + std::to_string(a[i]);
  }
  return out.empty() ? "1" : out;
}

GSequence beta_tilde(const LabeledPrimes& lp, const ExponentVector& a) {
  if (a.dimension() != lp.prime_count()) {
    fail(ErrorKind::kDimensionMismatch, "element does not match the number of primes");
  }
  GSequence out(lp.group());
  for (std::size_t i = 0; i < a.dimension(); ++i) out.add(lp.labels()[i], a[i]);
  return out;
}

bool in_F_phi(const LabeledPrimes& lp, const ExponentVector& a, const Budget& budget) {
  return in_F_iota(beta_tilde(lp, a), budget);
}

PredicateMonoid phi_monoid(const LabeledPrimes& lp, const Budget& budget) {
  return PredicateMonoid(
      lp.prime_count(), [lp, budget](const ExponentVector& v) { return in_F_phi(lp, v, budget); },
      "F_phi", [lp](const ExponentVector& v) { return format_prime_product(lp, v); });
}

// --------------------------------------------------------------- transfer

TransferReport transfer_check(const LabeledPrimes& lp, std::int64_t window_len,
                              const Budget& budget) {
  if (window_len < 0) fail(ErrorKind::kBadParameters, "window length must be non-negative");
  TransferReport report;
  const auto& ctx = lp.context();
  const auto fail_with = [&](bool TransferReport::*flag, std::string witness) {
    if (report.passed) report.witness = std::move(witness);
    report.*flag = false;
    report.passed = false;
  };

  // (T1): preimages of short sequences in F_iota(G0).
  for_each_multiset(ctx.support().size(), window_len, budget,
                    [&](const std::vector<std::int64_t>& mult, std::int64_t) {
                      if (!report.passed) return;
                      const auto s = from_multiplicities(ctx, mult);
                      if (!in_F_iota(s, budget)) return;
                      ++report.sequences_checked;
                      std::vector<std::int64_t> pre(lp.prime_count(), 0);
                      for (const auto& [g, k] : s.multiplicities()) {
                        auto it = std::find(lp.labels().begin(), lp.labels().end(), g);
                        if (it == lp.labels().end()) {
                          fail_with(&TransferReport::surjective,
                                    "no preimage of " + to_string(s) + ": class " + to_string(g) +
                                        " carries no prime");
                          return;
                        }
                        pre[static_cast<std::size_t>(it - lp.labels().begin())] += k;
                      }
                      const ExponentVector a(std::move(pre));
                      if (!in_F_phi(lp, a, budget) || !(beta_tilde(lp, a) == s)) {
                        fail_with(&TransferReport::surjective,
                                  "preimage of " + to_string(s) + " is not in F_phi");
                      }
                    });

  // (T2) and the unit condition over short elements of F_phi.
  for_each_multiset(lp.prime_count(), window_len, budget,
                    [&](const std::vector<std::int64_t>& mult, std::int64_t len) {
                      if (!report.passed) return;
                      const ExponentVector a(mult);
                      if (!in_F_phi(lp, a, budget)) return;
                      ++report.elements_checked;
                      const auto image = beta_tilde(lp, a);
                      if (image.empty() != (len == 0)) {
                        fail_with(&TransferReport::units_only_over_1,
                                  format_prime_product(lp, a) + " maps to the empty sequence");
                        return;
                      }
                      const auto image_vec = ctx.to_vector(image);
                      for (const auto& b_vec : divisor_enumeration(image_vec)) {
                        const auto b = ctx.to_sequence(b_vec);
                        const auto c = ctx.to_sequence(*checked_subtract(image_vec, b_vec));
                        if (!in_F_iota(b, budget) || !in_F_iota(c, budget)) continue;
                        ++report.splits_checked;
                        bool lifted = false;
                        for (const auto& v : divisor_enumeration(a)) {
                          if (!(beta_tilde(lp, v) == b)) continue;
                          const auto w = *checked_subtract(a, v);
                          if (in_F_phi(lp, v, budget) && in_F_phi(lp, w, budget)) {
                            lifted = true;
                            break;
                          }
                        }
                        if (!lifted) {
                          fail_with(&TransferReport::lifts,
                                    "split " + to_string(b) + " | " + to_string(c) + " of " +
                                        format_prime_product(lp, a) + " does not lift");
                          return;
                        }
                      }
                    });
  return report;
}

int fiber_catenary_check(const LabeledPrimes& lp, const ExponentVector& a, const Budget& budget) {
  const auto oracle = phi_monoid(lp, budget);
  const auto set = factorizations(oracle, oracle.make(a), budget);
  std::map<std::vector<ExponentVector>, std::vector<std::uint32_t>> fibres;
  for (std::uint32_t i = 0; i < set.size(); ++i) {
    std::vector<ExponentVector> key;
    for (auto j : set.factorizations()[i].atoms) {
      key.push_back(lp.context().to_vector(beta_tilde(lp, set.atoms()[j].vec)));
    }
    std::sort(key.begin(), key.end());
    fibres[std::move(key)].push_back(i);
  }
  int worst = 0;
  for (const auto& [key, members] : fibres) worst = std::max(worst, bottleneck(set, members, budget));
  return worst;
}

}  // namespace condmon
