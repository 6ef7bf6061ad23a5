#ifndef CONDMON_CONSTRUCTIONS_HPP
#define CONDMON_CONSTRUCTIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "condmon/budget.hpp"
#include "condmon/ideal_extension.hpp"
#include "condmon/zerosum.hpp"

namespace condmon {

/// N_{>=alpha}^s u {0}: the ideal generated by (alpha, ..., alpha).
IdealExtensionMonoid deep_hole_monoid(std::size_t s, std::int64_t alpha);
/// (p_1^alpha_1 ... p_s^alpha_s) F u H^x, optionally with a unit group.
IdealExtensionMonoid power_primary_monoid(const ExponentVector& alphas,
                                          std::optional<FiniteAbelianGroup> unit_group = std::nullopt);
/// s = 2m, generated by the neighbouring pairs e_i + e_{i+1} of a 2m-cycle.
IdealExtensionMonoid cycle_monoid(std::int64_t m);
/// p_1 ... p_{2m}, the product of all primes of the cycle monoid.
ExponentVector cycle_all_ones(std::int64_t m);

/// Which recipe produced an interval sequence.
enum class IntervalRecipe {
  kAtomAndInverse,   // k = 2: (-U) U for an atom U of B(G) of length l
  kZerosAndPair,     // l = k + 1: 0^k (-g) g
  kLargeOrder,       // 0^k g^n (-ng) (-g)^n (ng), ord(g) > 2n
  kElementaryTwo,    // [3,5] over an elementary 2-group: 0^2 e1^2 e2^2 (e1+e2)^2
  kIndependent,      // 0^k A (-A), A = e_0 e_1 ... e_n
  kSearch,           // first product of k atoms with the right length set
};
std::string_view to_string(IntervalRecipe r);

struct IntervalSequence {
  GSequence sequence;
  IntervalRecipe recipe;
  /// L(S) as computed by the engine; empty when verification was skipped.
  std::vector<int> lengths;
};

/// A sequence over G in F_iota with min L = k and max L = l. Recipes are
/// tried in the order listed in IntervalRecipe and the first applicable one
/// wins. When no recipe applies, products of k atoms of F_iota(G) are
/// searched exhaustively, up to enumeration_cap / 50 distinct products.
/// GroupTooSmall when nothing is found; VerificationFailed when the engine
/// disagrees with a recipe.
IntervalSequence interval_sequence(const FiniteAbelianGroup& g, int k, int l, bool verify = true,
                                   const Budget& budget = {});

enum class EqualCatenaryMode { kLargeOrder, kBoundedExponent };

struct EqualCatenaryParams {
  /// Prime p; 0 picks the default (smallest prime in [n^2, 2n^2] for the
  /// large-order mode, 2 for the bounded-exponent mode).
  std::int64_t p = 0;
  /// Cyclic order for the large-order mode; 0 picks n (2n^2)^n + 1.
  std::int64_t order = 0;
};

struct EqualCatenaryInstance {
  ZeroSumContext context;
  GSequence element;
  /// The two factorizations of length n + 1, as atom lists.
  std::vector<GSequence> first;
  std::vector<GSequence> second;
};

/// An element with exactly two factorizations of length n + 1 at distance
/// n + 1 in F_iota(G0). BadParameters for n < 2 or unusable p / order;
/// VerificationFailed when the engine finds a different layer.
EqualCatenaryInstance equal_catenary_instance(int n, EqualCatenaryMode mode,
                                              EqualCatenaryParams params = {}, bool verify = true,
                                              const Budget& budget = {});

}  // namespace condmon

#endif  // CONDMON_CONSTRUCTIONS_HPP
