#ifndef CONDMON_FACTOR_HPP
#define CONDMON_FACTOR_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condmon/budget.hpp"
#include "condmon/errors.hpp"
#include "condmon/element.hpp"

namespace condmon {

/// A commutative monoid H embedded in F = E x N_0^s, given by membership and
/// an atom generator. For non-identity elements membership must not depend on
/// the unit part; the identity is always a member.
class AtomicOracle {
 public:
  virtual ~AtomicOracle() = default;

  virtual std::size_t dimension() const = 0;
  /// E, the unit group of F modulo H^x. Trivial by default.
  virtual FiniteAbelianGroup unit_group() const { return {}; }
  virtual bool contains(const MonoidElement& x) const = 0;
  virtual bool is_atom(const MonoidElement& x) const = 0;
  /// Every atom with vector part <= upper, one per unit decoration.
  virtual std::vector<MonoidElement> atoms_below(const ExponentVector& upper) const = 0;
  virtual std::string format(const MonoidElement& x) const { return to_string(x); }

  /// Atoms whose vector part divides vec(a), sorted canonically. NotAMember
  /// when a is outside H.
  std::vector<MonoidElement> atoms_dividing(const MonoidElement& a) const;

  MonoidElement identity() const;
  /// The element with zero unit part and the given vector.
  MonoidElement make(ExponentVector v) const;
  bool is_identity(const MonoidElement& x) const { return x.is_identity(); }
  MonoidElement combine(const MonoidElement& a, const MonoidElement& b) const {
    return condmon::combine(a, b);
  }
  std::optional<MonoidElement> checked_divide(const MonoidElement& a,
                                              const MonoidElement& b) const {
    return condmon::checked_divide(a, b);
  }
  /// b divides a in H: a / b exists in F and lies in H.
  bool divides_in(const MonoidElement& b, const MonoidElement& a) const;
};

/// Finite set of integers stored as a bitset; used for length sets.
class LengthSet {
 public:
  LengthSet() = default;
  static LengthSet single(int k);
  static LengthSet from(std::span<const int> values);

  bool empty() const;
  bool contains(int k) const;
  void insert(int k);
  /// this |= other + shift.
  void merge_shifted(const LengthSet& other, int shift);
  int min() const;
  int max() const;
  std::size_t size() const;
  bool is_interval() const;
  /// Largest difference of consecutive members; 0 for at most one member.
  int max_gap() const;
  std::vector<int> to_vector() const;

  friend bool operator==(const LengthSet& a, const LengthSet& b);

 private:
  std::vector<std::uint64_t> words_;
};

/// The divisor window of one element: every divisor of `top` in F, with
/// membership flags and the atoms that fit. Ids are ordered so that a proper
/// divisor always has a smaller id than its multiple.
class ElementLattice {
 public:
  ElementLattice(const AtomicOracle& oracle, const MonoidElement& top,
                 const Budget& budget = {});

  const AtomicOracle& oracle() const { return *oracle_; }
  const MonoidElement& top() const { return top_; }
  std::size_t size() const { return member_.size(); }
  std::size_t top_id() const { return top_id_; }

  std::size_t id(const MonoidElement& x) const;
  MonoidElement element(std::size_t id) const;
  /// In H, identity included.
  bool member(std::size_t id) const { return member_[id] != 0; }
  static bool is_identity(std::size_t id) { return id == 0; }

  std::size_t atom_count() const { return atoms_.size(); }
  const std::vector<MonoidElement>& atoms() const { return atoms_; }
  std::size_t atom_id(std::size_t j) const { return atom_ids_[j]; }

  /// id(x / atom j) when the atom divides x in F.
  std::optional<std::size_t> quotient_by_atom(std::size_t x, std::size_t j) const;
  /// id(x / y) when y divides x in F.
  std::optional<std::size_t> quotient(std::size_t x, std::size_t y) const;
  /// id of the product of atoms given by index, assuming it divides top.
  std::size_t product(std::span<const std::uint32_t> atom_indices) const;
  /// Atoms u with x / u in H, in atom order.
  std::vector<std::uint32_t> divisor_atoms(std::size_t x) const;

  std::size_t unit_count() const { return unit_count_; }
  const BoxIndex& box() const { return box_; }

 private:
  std::size_t vec_part(std::size_t id) const { return id / unit_count_; }
  std::size_t unit_part(std::size_t id) const { return id % unit_count_; }
  std::size_t unit_sub(std::size_t a, std::size_t b) const {
    return unit_sub_[a * unit_count_ + b];
  }
  std::size_t unit_add(std::size_t a, std::size_t b) const {
    return unit_add_[a * unit_count_ + b];
  }
  bool atom_fits(std::size_t vec_id, std::size_t j) const;

  const AtomicOracle* oracle_;
  MonoidElement top_;
  std::size_t top_id_ = 0;
  BoxIndex box_;
  FiniteAbelianGroup units_;
  std::size_t unit_count_ = 1;
  std::vector<std::size_t> unit_sub_;
  std::vector<std::size_t> unit_add_;
  std::vector<char> member_;
  std::vector<MonoidElement> atoms_;
  std::vector<std::size_t> atom_ids_;
  std::vector<std::int64_t> atom_coords_;  // atom_count x dimension
  std::vector<std::int64_t> box_coords_;   // box size x dimension
};

/// A multiset of atoms, stored as sorted indices into the owning set's atoms.
struct Factorization {
  std::vector<std::uint32_t> atoms;

  std::size_t size() const { return atoms.size(); }
  friend bool operator==(const Factorization&, const Factorization&) = default;
  friend auto operator<=>(const Factorization&, const Factorization&) = default;
};

struct FactorizationHash {
  std::size_t operator()(const Factorization& z) const noexcept;
};

/// d(z, z'): the larger residual size after removing the common part.
int distance(const Factorization& z, const Factorization& w);

/// Z(x) for one element x of a lattice; atom indices refer to the lattice.
class FactorizationSet {
 public:
  FactorizationSet(std::shared_ptr<const ElementLattice> lattice, std::size_t element_id,
                   std::vector<Factorization> factorizations);

  MonoidElement element() const { return lattice_->element(element_id_); }
  std::size_t element_id() const { return element_id_; }
  const ElementLattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const ElementLattice>& lattice_ptr() const { return lattice_; }
  const std::vector<MonoidElement>& atoms() const { return lattice_->atoms(); }
  const std::vector<Factorization>& factorizations() const { return factorizations_; }
  std::size_t size() const { return factorizations_.size(); }

  LengthSet lengths() const;
  /// Positions of factorizations of length k, in enumeration order.
  std::vector<std::uint32_t> layer(int k) const;
  std::vector<MonoidElement> expand(const Factorization& z) const;
  std::string format(const Factorization& z) const;

 private:
  std::shared_ptr<const ElementLattice> lattice_;
  std::size_t element_id_;
  std::vector<Factorization> factorizations_;
};

/// Z(a) by descent with atoms in non-decreasing canonical order, sorted.
/// NotAMember when a is outside H; BudgetExceeded above factorization_cap.
FactorizationSet factorizations(const AtomicOracle& oracle, const MonoidElement& a,
                                const Budget& budget = {});
/// Z(x) for the lattice element with the given id.
FactorizationSet factorizations(std::shared_ptr<const ElementLattice> lattice, std::size_t id,
                                const Budget& budget = {});
/// Z(x) by unordered descent over every atom choice with deduplication; a
/// reference implementation for cross-checks.
FactorizationSet naive_factorizations(std::shared_ptr<const ElementLattice> lattice,
                                      std::size_t id, const Budget& budget = {});
/// Factorizations of lattice element x of length at most max_len, sorted.
std::vector<Factorization> short_factorizations(const ElementLattice& lattice, std::size_t x,
                                                int max_len, const Budget& budget = {});

/// Least N making the subset connected under d <= N; 0 below two members.
/// Prim's minimum bottleneck spanning tree on the complete distance graph.
int bottleneck_prim(const FactorizationSet& set, std::span<const std::uint32_t> subset);
/// Kruskal over every pair; quadratic memory, for cross-checks only.
int bottleneck_kruskal(const FactorizationSet& set, std::span<const std::uint32_t> subset);
/// Increasing threshold with union-find. Neighbours at distance <= N are
/// found by replacing a sub-multiset X, |X| <= N, with another factorization
/// of pi(X) of length <= N, so no distance matrix is formed.
int bottleneck_threshold(const FactorizationSet& set, std::span<const std::uint32_t> subset,
                         const Budget& budget = {});
/// Prim up to 2000 members, threshold search above.
int bottleneck(const FactorizationSet& set, std::span<const std::uint32_t> subset,
               const Budget& budget = {});

int catenary(const FactorizationSet& set, const Budget& budget = {});
int catenary_eq(const FactorizationSet& set, const Budget& budget = {});
int catenary_adj(const FactorizationSet& set, const Budget& budget = {});
int catenary_mon(const FactorizationSet& set, const Budget& budget = {});
int catenary(const AtomicOracle& oracle, const MonoidElement& a, const Budget& budget = {});
int catenary_eq(const AtomicOracle& oracle, const MonoidElement& a, const Budget& budget = {});
int catenary_adj(const AtomicOracle& oracle, const MonoidElement& a,
                 const Budget& budget = {});
int catenary_mon(const AtomicOracle& oracle, const MonoidElement& a,
                 const Budget& budget = {});

struct InvariantReport {
  MonoidElement element;
  std::string element_text;
  std::uint64_t z_count = 0;
  std::vector<int> lengths;
  int c = 0;
  int c_eq = 0;
  int c_adj = 0;
  int c_mon = 0;
  /// Sorted subset of {"half_factorial", "interval", "length_factorial"}.
  std::vector<std::string> flags;
};

InvariantReport invariants(const FactorizationSet& set, const Budget& budget = {});
InvariantReport invariants(const AtomicOracle& oracle, const MonoidElement& a,
                           const Budget& budget = {});

/// L(x) for every member of the lattice, by L(x) = union of L(x/u) + 1 over
/// atoms u with x/u in H. Entries for non-members are empty.
std::vector<LengthSet> lattice_length_sets(const ElementLattice& lattice);
LengthSet length_set(const AtomicOracle& oracle, const MonoidElement& a,
                     const Budget& budget = {});

struct LengthUnion {
  std::vector<int> lengths;
  /// True only when the domain is known to cover every element with k in L.
  bool complete = false;
  std::size_t contributing = 0;
};
/// Union of L(a) over domain members a with k in L(a).
LengthUnion union_of_lengths(const AtomicOracle& oracle, std::span<const MonoidElement> domain,
                             int k, const Budget& budget = {});

struct HalfFactorialResult {
  bool half_factorial = true;
  std::optional<MonoidElement> witness;
  std::size_t checked = 0;
};
HalfFactorialResult is_half_factorial_within(const AtomicOracle& oracle,
                                             std::span<const MonoidElement> domain,
                                             const Budget& budget = {});

struct PrimalityWitness {
  MonoidElement a;
  MonoidElement b;
};
/// a, b in H with u | ab and u dividing neither, both in H. Tries a = u x,
/// b = u y for non-members x, y of the domain first, then every pair of
/// members of the domain.
std::optional<PrimalityWitness> primality_witness(const AtomicOracle& oracle,
                                                  const MonoidElement& u,
                                                  std::span<const MonoidElement> domain,
                                                  const Budget& budget = {});

/// Exact per-element certificates over a whole lattice, without enumerating
/// factorization sets.
struct WindowCertificate {
  std::vector<LengthSet> lengths;
  /// c(x) <= 3, established inductively over divisors.
  std::vector<char> catenary_at_most_3;
  /// Every pair of adjacent lengths of L(x) is at cross distance exactly 3.
  std::vector<char> adjacent_exactly_3;
};
WindowCertificate certify_window(const ElementLattice& lattice);

}  // namespace condmon

#endif  // CONDMON_FACTOR_HPP
