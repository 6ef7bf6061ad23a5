#ifndef CONDMON_IDEAL_EXTENSION_HPP
#define CONDMON_IDEAL_EXTENSION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "condmon/factor.hpp"

namespace condmon {

/// H = (a x E) u {1} inside F = E x N_0^s, where a is the s-ideal generated
/// by an antichain of non-zero vectors and E is a finite group of units of F
/// that H does not contain.
class IdealExtensionMonoid : public AtomicOracle {
 public:
  /// Validates the generators: non-empty, non-zero, dimension s, pairwise
  /// incomparable. BadParameters names the first offending generator.
  IdealExtensionMonoid(std::size_t s, std::vector<ExponentVector> generators,
                       std::optional<FiniteAbelianGroup> unit_group = std::nullopt);

  std::size_t dimension() const override { return s_; }
  FiniteAbelianGroup unit_group() const override { return units_; }
  bool has_unit_group() const { return has_units_; }
  const std::vector<ExponentVector>& generators() const { return generators_; }

  /// v lies in the ideal: some generator divides v.
  bool in_ideal(const ExponentVector& v) const;
  bool contains(const MonoidElement& x) const override;
  bool contains(const ExponentVector& v) const;
  /// v in a with no generators g, g' satisfying g + g' <= v. Equivalent to
  /// the absence of a split v = v1 + v2 with v1, v2 in a.
  bool is_atom(const MonoidElement& x) const override;
  bool is_atom(const ExponentVector& v) const;
  std::vector<MonoidElement> atoms_below(const ExponentVector& upper) const override;

 private:
  void check_dimension(const ExponentVector& v) const;

  std::size_t s_;
  std::vector<ExponentVector> generators_;
  FiniteAbelianGroup units_;
  bool has_units_;
};

/// A submonoid of N_0^s given by a membership predicate on non-zero vectors.
/// Atoms are decided by trying every split inside the divisor box.
class PredicateMonoid : public AtomicOracle {
 public:
  using Predicate = std::function<bool(const ExponentVector&)>;
  using Formatter = std::function<std::string(const ExponentVector&)>;

  PredicateMonoid(std::size_t s, Predicate member, std::string name,
                  Formatter formatter = nullptr);

  std::size_t dimension() const override { return s_; }
  const std::string& name() const { return name_; }
  bool contains(const MonoidElement& x) const override;
  bool is_atom(const MonoidElement& x) const override;
  std::vector<MonoidElement> atoms_below(const ExponentVector& upper) const override;
  std::string format(const MonoidElement& x) const override;

 private:
  std::size_t s_;
  Predicate member_;
  std::string name_;
  Formatter formatter_;
};

/// The submonoid of N_0^2 generated by (1,1): the diagonal. Not a conductor
/// submonoid.
PredicateMonoid diagonal_monoid();
/// All of N_0^s; factorial, with the unit vectors as primes.
PredicateMonoid free_monoid(std::size_t s);

/// Reference atom test by exhaustive split search over divisors of v;
/// BudgetExceeded when |v| exceeds length_cap.
bool is_atom_by_splits(const AtomicOracle& oracle, const ExponentVector& v,
                       std::int64_t length_cap = 40);

/// M(H): the minimal non-identity elements under divisibility in F, which are
/// the generators. Each is checked to be an atom.
std::vector<ExponentVector> minimal_elements(const IdealExtensionMonoid& h);

struct GapSet {
  std::vector<ExponentVector> gaps;
  /// The window provably contains every gap.
  bool complete = false;
};
GapSet gap_set(const IdealExtensionMonoid& h, const Box& window, std::uint64_t cap = 1'000'000);
/// Every axis carries a generator supported on that axis alone.
bool gap_set_is_finite(const IdealExtensionMonoid& h);

struct GapAbsorptionFailure {
  ExponentVector gap;
  ExponentVector atom;
  ExponentVector sum;
};
struct GapAbsorptionResult {
  bool absorbing = true;
  std::optional<GapAbsorptionFailure> counterexample;
  std::uint64_t checked = 0;
};
/// Checks g + u in A(H) u (A(H) + A(H)) for every gap g and atom u whose sum
/// stays inside the window. Works for any oracle over N_0^s.
GapAbsorptionResult is_gap_absorbing(const AtomicOracle& h, const Box& window,
                                     const Budget& budget = {});

/// Largest coordinate over the generators.
std::int64_t cmonoid_alpha(const IdealExtensionMonoid& h);
/// For every j and every a in [0, 2 alpha]^s with a_j >= alpha:
/// a in H iff a + alpha e_j in H. Returns the first failing a, if any.
std::optional<ExponentVector> alpha_criterion_counterexample(const IdealExtensionMonoid& h);

struct ClassSemigroup {
  std::int64_t cap = 0;
  /// Lexicographically first vector of each class.
  std::vector<ExponentVector> representatives;
  /// table[i][j] = class of representatives[i] + representatives[j].
  std::vector<std::vector<std::size_t>> table;

  std::size_t class_count() const { return representatives.size(); }
};
/// (H, F)-classes of the capped cube {v : v_i <= cap}, cap defaulting to
/// cmonoid_alpha. y and y' are equivalent when x + y in H iff x + y' in H for
/// every x in the cube, which decides equivalence on all of F because
/// membership of x + y depends only on min(x_i + y_i, alpha).
/// BadParameters when the monoid has a unit group.
ClassSemigroup class_semigroup(const IdealExtensionMonoid& h,
                               std::optional<std::int64_t> cap = std::nullopt);
/// Class count by direct comparison of residual sets over [0, side]^s,
/// without capping.
std::size_t class_count_uncapped(const IdealExtensionMonoid& h, std::int64_t side);

}  // namespace condmon

#endif  // CONDMON_IDEAL_EXTENSION_HPP
