#ifndef CONDMON_ZEROSUM_HPP
#define CONDMON_ZEROSUM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "condmon/budget.hpp"
#include "condmon/factor.hpp"
#include "condmon/group.hpp"
#include "condmon/ideal_extension.hpp"

namespace condmon {

/// A finite multiset of group elements, kept as a sorted multiplicity map.
class GSequence {
 public:
  GSequence() = default;
  explicit GSequence(FiniteAbelianGroup group) : group_(std::move(group)) {}
  GSequence(FiniteAbelianGroup group, std::span<const GroupElement> elements);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::map<GroupElement, std::int64_t>& multiplicities() const { return mult_; }
  std::int64_t multiplicity(const GroupElement& g) const;
  /// |S|.
  std::int64_t length() const;
  bool empty() const { return mult_.empty(); }
  /// Appends g with multiplicity k >= 0.
  void add(const GroupElement& g, std::int64_t k = 1);
  /// Elements with repetition, in canonical order.
  std::vector<GroupElement> elements() const;

  friend bool operator==(const GSequence& a, const GSequence& b) { return a.mult_ == b.mult_; }
  /// Shorter sequences first, then lexicographic on elements().
  friend std::strong_ordering operator<=>(const GSequence& a, const GSequence& b);

 private:
  FiniteAbelianGroup group_;
  std::map<GroupElement, std::int64_t> mult_;
};

GSequence operator*(const GSequence& a, const GSequence& b);
/// The sum of S in G.
GroupElement sigma(const GSequence& s);
/// No non-empty subsequence sums to zero. Decided by growing the set of
/// non-empty subsums one element at a time. BudgetExceeded above
/// sequence_length_cap.
bool is_zero_sum_free(const GSequence& s, const Budget& budget = {});
/// S is empty or not zero-sum free.
bool in_F_iota(const GSequence& s, const Budget& budget = {});
/// "0^2 * (1)^3"; the empty sequence prints as "1".
std::string to_string(const GSequence& s);
/// Parses products of "base^k" factors separated by '*'. A base is "0", a
/// residue tuple, a bare integer for rank one, "g" (first generator), "eN"
/// (N-th generator), optionally negated with a leading '-'. "1" is empty.
GSequence parse_sequence(const FiniteAbelianGroup& g, std::string_view text);

/// A group with a support G0, whose elements index the coordinates of
/// sequence vectors.
class ZeroSumContext {
 public:
  /// Sorted, deduplicated support. BadParameters when empty or foreign.
  ZeroSumContext(FiniteAbelianGroup group, std::vector<GroupElement> support);
  /// G0 = G.
  static ZeroSumContext full(FiniteAbelianGroup group);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<GroupElement>& support() const { return support_; }
  std::optional<std::size_t> position(const GroupElement& g) const;

  /// Multiplicity vector over the support; BadParameters outside G0.
  ExponentVector to_vector(const GSequence& s) const;
  GSequence to_sequence(const ExponentVector& v) const;

 private:
  FiniteAbelianGroup group_;
  std::vector<GroupElement> support_;
};

/// F_iota(G0) as an oracle over multiplicity vectors.
PredicateMonoid iota_monoid(const ZeroSumContext& ctx, const Budget& budget = {});

/// Atoms of B(G0) of length <= max_len, sorted. Each atom is T * (-sigma(T))
/// for a zero-sum free T over G0 with -sigma(T) in G0.
std::vector<GSequence> minimal_zero_sum_sequences(const ZeroSumContext& ctx, std::int64_t max_len,
                                                  const Budget& budget = {});
/// Length of the longest zero-sum free sequence over G0.
std::int64_t max_zero_sum_free_length(const ZeroSumContext& ctx, const Budget& budget = {});
/// D(G0) by depth-first search over zero-sum free sequences.
std::int64_t davenport(const ZeroSumContext& ctx, const Budget& budget = {});
/// D(G0) by listing every sequence of length <= |G| + 1 and testing
/// minimality against all of its subsequences. Independent of davenport().
std::int64_t davenport_by_enumeration(const ZeroSumContext& ctx, const Budget& budget = {});

/// Atoms of F_iota(G0) dividing a. NotAMember when a is outside F_iota.
std::vector<GSequence> atoms_of_F_iota(const ZeroSumContext& ctx, const GSequence& a,
                                       const Budget& budget = {});
/// Every atom of F_iota(G0). An atom S contains a minimal zero-sum B with
/// |B| <= D(G0), and the rest has length <= m, the longest zero-sum free
/// length, so |S| <= D(G0) + m. The search runs one length further and raises
/// BoundAttained if anything turns up there.
std::vector<GSequence> global_atoms_F_iota(const ZeroSumContext& ctx, const Budget& budget = {});
/// The length bound D(G0) + m used by global_atoms_F_iota.
std::int64_t iota_atom_length_bound(const ZeroSumContext& ctx, const Budget& budget = {});

/// Finitely many primes, each labelled by its class in G0.
class LabeledPrimes {
 public:
  /// Names are sorted; the support defaults to the set of labels.
  LabeledPrimes(FiniteAbelianGroup group, std::map<std::string, GroupElement> labels,
                std::optional<std::vector<GroupElement>> support = std::nullopt);

  const FiniteAbelianGroup& group() const { return group_; }
  const ZeroSumContext& context() const { return ctx_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<GroupElement>& labels() const { return labels_; }
  std::size_t prime_count() const { return names_.size(); }
  /// UnknownPrime for names outside P.
  std::size_t index_of(std::string_view name) const;

 private:
  FiniteAbelianGroup group_;
  std::vector<std::string> names_;
  std::vector<GroupElement> labels_;
  ZeroSumContext ctx_;
};

/// "p^2 * q"; "1" is the empty product.
ExponentVector parse_prime_product(const LabeledPrimes& lp, std::string_view text);
std::string format_prime_product(const LabeledPrimes& lp, const ExponentVector& a);

/// The image sequence of a multiset over P.
GSequence beta_tilde(const LabeledPrimes& lp, const ExponentVector& a);
bool in_F_phi(const LabeledPrimes& lp, const ExponentVector& a, const Budget& budget = {});
/// F_phi as an oracle over exponent vectors on P.
PredicateMonoid phi_monoid(const LabeledPrimes& lp, const Budget& budget = {});

struct TransferReport {
  bool passed = true;
  bool surjective = true;       // every S in F_iota has a preimage
  bool units_only_over_1 = true;  // beta*(a) = 1 forces a = 1
  bool lifts = true;            // every split of beta*(a) lifts to a
  std::string witness;
  std::uint64_t sequences_checked = 0;
  std::uint64_t elements_checked = 0;
  std::uint64_t splits_checked = 0;
};
/// Exhaustive (T1)/(T2) check for beta* : F_phi -> F_iota(G0) up to length
/// window_len.
TransferReport transfer_check(const LabeledPrimes& lp, std::int64_t window_len,
                              const Budget& budget = {});

/// Largest bottleneck inside the fibres of Z(a) that share the same image
/// multiset of atom classes.
int fiber_catenary_check(const LabeledPrimes& lp, const ExponentVector& a,
                         const Budget& budget = {});

}  // namespace condmon

#endif  // CONDMON_ZEROSUM_HPP
