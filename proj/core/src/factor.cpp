#include "condmon/factor.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

#include "condmon/errors.hpp"
#include "text.hpp"

namespace condmon {

namespace {

constexpr std::uint64_t kUnitCap = 4096;
constexpr std::size_t kPrimLimit = 2000;
constexpr std::uint64_t kCrossPairLimit = 4'000'000;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    --components_;
    return true;
  }
  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

/// Sorted multiset union.
std::vector<std::uint32_t> merge_sorted(std::span<const std::uint32_t> a,
                                        std::span<const std::uint32_t> b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Calls visit(X, rest) for every sub-multiset X of the sorted z with
/// 1 <= |X| <= max_size; rest is z minus X.
template <typename Visit>
void for_each_submultiset(const std::vector<std::uint32_t>& z, int max_size, Visit&& visit) {
  std::vector<std::pair<std::uint32_t, int>> runs;
  for (auto a : z) {
    if (!runs.empty() && runs.back().first == a) {
      ++runs.back().second;
    } else {
      runs.emplace_back(a, 1);
    }
  }
  std::vector<int> take(runs.size(), 0);
  std::vector<std::uint32_t> x;
  std::vector<std::uint32_t> rest;
  const auto emit = [&] {
    x.clear();
    rest.clear();
    for (std::size_t r = 0; r < runs.size(); ++r) {
      x.insert(x.end(), take[r], runs[r].first);
      rest.insert(rest.end(), runs[r].second - take[r], runs[r].first);
    }
    return visit(std::as_const(x), std::as_const(rest));
  };
  // Returns true to stop early.
  const auto rec = [&](auto&& self, std::size_t r, int used) -> bool {
    if (r == runs.size()) return used > 0 && emit();
    for (int t = 0; t <= runs[r].second && used + t <= max_size; ++t) {
      take[r] = t;
      if (self(self, r + 1, used + t)) return true;
    }
    take[r] = 0;
    return false;
  };
  rec(rec, 0, 0);
}

}  // namespace

// ---------------------------------------------------------------- oracle

MonoidElement AtomicOracle::identity() const {
  return {unit_group().zero(), ExponentVector(dimension())};
}

MonoidElement AtomicOracle::make(ExponentVector v) const {
  if (v.dimension() != dimension()) {
    fail(ErrorKind::kDimensionMismatch, "element has dimension " + std::to_string(v.dimension()) +
                                            ", monoid has " + std::to_string(dimension()));
  }
  return {unit_group().zero(), std::move(v)};
}

std::vector<MonoidElement> AtomicOracle::atoms_dividing(const MonoidElement& a) const {
  if (!contains(a)) fail(ErrorKind::kNotAMember, format(a) + " is not in the monoid");
  auto atoms = atoms_below(a.vec);
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

bool AtomicOracle::divides_in(const MonoidElement& b, const MonoidElement& a) const {
  auto q = checked_divide(a, b);
  return q && contains(*q);
}

// ------------------------------------------------------------- LengthSet

LengthSet LengthSet::single(int k) {
  LengthSet s;
  s.insert(k);
  return s;
}

LengthSet LengthSet::from(std::span<const int> values) {
  LengthSet s;
  for (int v : values) s.insert(v);
  return s;
}

bool LengthSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool LengthSet::contains(int k) const {
  if (k < 0) return false;
  const auto w = static_cast<std::size_t>(k) / 64;
  return w < words_.size() && ((words_[w] >> (k % 64)) & 1U) != 0;
}

void LengthSet::insert(int k) {
  if (k < 0) fail(ErrorKind::kBadParameters, "negative length");
  const auto w = static_cast<std::size_t>(k) / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (k % 64);
}

void LengthSet::merge_shifted(const LengthSet& other, int shift) {
  if (other.words_.empty()) return;
  const int top = other.max();
  if (top < 0) return;
  const auto needed = static_cast<std::size_t>(top + shift) / 64 + 1;
  if (words_.size() < needed) words_.resize(needed, 0);
  const int word_shift = shift / 64;
  const int bit_shift = shift % 64;
  for (std::size_t i = 0; i < other.words_.size(); ++i) {
    const std::uint64_t w = other.words_[i];
    if (w == 0) continue;
    const std::size_t lo = i + word_shift;
    words_[lo] |= w << bit_shift;
    if (bit_shift != 0 && lo + 1 < words_.size()) words_[lo + 1] |= w >> (64 - bit_shift);
  }
}

int LengthSet::min() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
  }
  return -1;
}

int LengthSet::max() const {
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i] != 0) return static_cast<int>(i * 64) + 63 - std::countl_zero(words_[i]);
  }
  return -1;
}

std::size_t LengthSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool LengthSet::is_interval() const {
  if (empty()) return true;
  return static_cast<int>(size()) == max() - min() + 1;
}

int LengthSet::max_gap() const {
  int gap = 0;
  int prev = -1;
  for (int v : to_vector()) {
    if (prev >= 0) gap = std::max(gap, v - prev);
    prev = v;
  }
  return gap;
}

std::vector<int> LengthSet::to_vector() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      out.push_back(static_cast<int>(i * 64) + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

bool operator==(const LengthSet& a, const LengthSet& b) { return a.to_vector() == b.to_vector(); }

// -------------------------------------------------------- ElementLattice

ElementLattice::ElementLattice(const AtomicOracle& oracle, const MonoidElement& top,
                               const Budget& budget)
    : oracle_(&oracle), top_(top), units_(oracle.unit_group()) {
  const std::size_t d = oracle.dimension();
  if (top.vec.dimension() != d) {
    fail(ErrorKind::kDimensionMismatch, "element has dimension " +
                                            std::to_string(top.vec.dimension()) +
                                            ", monoid has " + std::to_string(d));
  }
  if (!(top.unit.group() == units_)) {
    fail(ErrorKind::kGroupMismatch, "unit part lies in " + top.unit.group().to_string() +
                                        ", expected " + units_.to_string());
  }
  const std::uint64_t units = units_.cardinality();
  if (units > kUnitCap) {
    fail(ErrorKind::kWindowTooLarge, "unit group too large: " + std::to_string(units));
  }
  unit_count_ = static_cast<std::size_t>(units);
  box_ = BoxIndex(top.vec, std::max<std::uint64_t>(1, budget.enumeration_cap / units));

  const auto all_units = units_.enumerate_elements(kUnitCap);
  unit_sub_.resize(unit_count_ * unit_count_);
  unit_add_.resize(unit_count_ * unit_count_);
  for (std::size_t a = 0; a < unit_count_; ++a) {
    for (std::size_t b = 0; b < unit_count_; ++b) {
      unit_sub_[a * unit_count_ + b] = units_.index_of(all_units[a] - all_units[b]);
      unit_add_[a * unit_count_ + b] = units_.index_of(all_units[a] + all_units[b]);
    }
  }

  box_coords_.resize(box_.size() * d);
  std::vector<std::int64_t> coords;
  member_.assign(box_.size() * unit_count_, 0);
  for (std::size_t v = 0; v < box_.size(); ++v) {
    box_.decode(v, coords);
    std::copy(coords.begin(), coords.end(), box_coords_.begin() + static_cast<long>(v * d));
    if (v == 0) {
      member_[0] = 1;  // only the identity: non-zero units are not in H
      continue;
    }
    const bool in = oracle.contains(MonoidElement{units_.zero(), ExponentVector(coords)});
    for (std::size_t u = 0; u < unit_count_; ++u) member_[v * unit_count_ + u] = in ? 1 : 0;
  }

  atoms_ = oracle.atoms_below(top.vec);
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  atom_coords_.reserve(atoms_.size() * d);
  for (const auto& atom : atoms_) {
    if (!divides(atom.vec, top.vec) || atom.vec.is_zero()) {
      fail(ErrorKind::kVerificationFailed,
           "oracle returned atom " + oracle.format(atom) + " outside the divisor window");
    }
    atom_ids_.push_back(box_.index(atom.vec) * unit_count_ + units_.index_of(atom.unit));
    for (auto c : atom.vec.coords()) atom_coords_.push_back(c);
  }
  top_id_ = id(top_);
}

std::size_t ElementLattice::id(const MonoidElement& x) const {
  if (!divides(x.vec, top_.vec)) {
    fail(ErrorKind::kWindowTooLarge, to_string(x) + " does not divide " + to_string(top_));
  }
  return box_.index(x.vec) * unit_count_ + units_.index_of(x.unit);
}

MonoidElement ElementLattice::element(std::size_t id) const {
  return {units_.element_at(unit_part(id)), box_.vector_at(vec_part(id))};
}

bool ElementLattice::atom_fits(std::size_t vec_id, std::size_t j) const {
  const std::size_t d = box_.dimension();
  const std::int64_t* x = box_coords_.data() + vec_id * d;
  const std::int64_t* a = atom_coords_.data() + j * d;
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] > x[i]) return false;
  }
  return true;
}

std::optional<std::size_t> ElementLattice::quotient_by_atom(std::size_t x, std::size_t j) const {
  const std::size_t v = vec_part(x);
  if (!atom_fits(v, j)) return std::nullopt;
  const std::size_t a = atom_ids_[j];
  return (v - vec_part(a)) * unit_count_ + unit_sub(unit_part(x), unit_part(a));
}

std::optional<std::size_t> ElementLattice::quotient(std::size_t x, std::size_t y) const {
  const std::size_t d = box_.dimension();
  const std::size_t vx = vec_part(x);
  const std::size_t vy = vec_part(y);
  for (std::size_t i = 0; i < d; ++i) {
    if (box_coords_[vy * d + i] > box_coords_[vx * d + i]) return std::nullopt;
  }
  return (vx - vy) * unit_count_ + unit_sub(unit_part(x), unit_part(y));
}

std::size_t ElementLattice::product(std::span<const std::uint32_t> atom_indices) const {
  std::size_t v = 0;
  std::size_t u = 0;
  for (auto j : atom_indices) {
    v += vec_part(atom_ids_[j]);
    u = unit_add(u, unit_part(atom_ids_[j]));
  }
  return v * unit_count_ + u;
}

std::vector<std::uint32_t> ElementLattice::divisor_atoms(std::size_t x) const {
  std::vector<std::uint32_t> out;
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    auto q = quotient_by_atom(x, j);
    if (q && member(*q)) out.push_back(static_cast<std::uint32_t>(j));
  }
  return out;
}

// ---------------------------------------------------------- Factorization

std::size_t FactorizationHash::operator()(const Factorization& z) const noexcept {
  std::size_t h = z.atoms.size();
  for (auto a : z.atoms) h = detail::hash_combine(h, a);
  return h;
}

int distance(const Factorization& z, const Factorization& w) {
  std::size_t common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < z.atoms.size() && j < w.atoms.size()) {
    if (z.atoms[i] == w.atoms[j]) {
      ++common;
      ++i;
      ++j;
    } else if (z.atoms[i] < w.atoms[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<int>(std::max(z.atoms.size(), w.atoms.size()) - common);
}

FactorizationSet::FactorizationSet(std::shared_ptr<const ElementLattice> lattice,
                                   std::size_t element_id, std::vector<Factorization> factorizations)
    : lattice_(std::move(lattice)),
      element_id_(element_id),
      factorizations_(std::move(factorizations)) {}

LengthSet FactorizationSet::lengths() const {
  LengthSet out;
  for (const auto& z : factorizations_) out.insert(static_cast<int>(z.size()));
  return out;
}

std::vector<std::uint32_t> FactorizationSet::layer(int k) const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < factorizations_.size(); ++i) {
    if (static_cast<int>(factorizations_[i].size()) == k) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::vector<MonoidElement> FactorizationSet::expand(const Factorization& z) const {
  std::vector<MonoidElement> out;
  out.reserve(z.size());
  for (auto j : z.atoms) out.push_back(atoms()[j]);
  return out;
}

std::string FactorizationSet::format(const Factorization& z) const {
  if (z.atoms.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < z.atoms.size(); ++i) {
    if (i) out += " * ";
    out += "[" + lattice_->oracle().format(atoms()[z.atoms[i]]) + "]";
  }
  return out;
}

// ------------------------------------------------------------ enumeration

namespace {

class CanonicalDescent {
 public:
  CanonicalDescent(const ElementLattice& lattice, int max_len, std::uint64_t cap)
      : lattice_(lattice), max_len_(max_len), cap_(cap) {}

  std::vector<Factorization> run(std::size_t x) {
    descend(x, 0);
    return std::move(out_);
  }

 private:
  void descend(std::size_t x, std::uint32_t start) {
    if (ElementLattice::is_identity(x)) {
      if (out_.size() >= cap_) {
        fail(ErrorKind::kBudgetExceeded,
             "factorization count exceeds cap " + std::to_string(cap_), out_.size());
      }
      out_.push_back(Factorization{current_});
      return;
    }
    if (static_cast<int>(current_.size()) >= max_len_) return;
    for (auto j = start; j < lattice_.atom_count(); ++j) {
      auto q = lattice_.quotient_by_atom(x, j);
      if (!q || !lattice_.member(*q)) continue;
      current_.push_back(j);
      descend(*q, j);
      current_.pop_back();
    }
  }

  const ElementLattice& lattice_;
  int max_len_;
  std::uint64_t cap_;
  std::vector<std::uint32_t> current_;
  std::vector<Factorization> out_;
};

}  // namespace

FactorizationSet factorizations(std::shared_ptr<const ElementLattice> lattice, std::size_t id,
                                const Budget& budget) {
  const auto& lat = *lattice;
  if (!lat.member(id)) {
    fail(ErrorKind::kNotAMember, lat.oracle().format(lat.element(id)) + " is not in the monoid");
  }
  CanonicalDescent descent(lat, std::numeric_limits<int>::max(), budget.factorization_cap);
  auto zs = descent.run(id);
  return FactorizationSet(std::move(lattice), id, std::move(zs));
}

FactorizationSet factorizations(const AtomicOracle& oracle, const MonoidElement& a,
                                const Budget& budget) {
  if (!oracle.contains(a)) {
    fail(ErrorKind::kNotAMember, oracle.format(a) + " is not in the monoid");
  }
  auto lattice = std::make_shared<const ElementLattice>(oracle, a, budget);
  const auto top = lattice->top_id();
  return factorizations(std::move(lattice), top, budget);
}

std::vector<Factorization> short_factorizations(const ElementLattice& lattice, std::size_t x,
                                                int max_len, const Budget& budget) {
  if (!lattice.member(x)) return {};
  CanonicalDescent descent(lattice, max_len, budget.factorization_cap);
  return descent.run(x);
}

FactorizationSet naive_factorizations(std::shared_ptr<const ElementLattice> lattice,
                                      std::size_t id, const Budget& budget) {
  const auto& lat = *lattice;
  if (!lat.member(id)) {
    fail(ErrorKind::kNotAMember, lat.oracle().format(lat.element(id)) + " is not in the monoid");
  }
  std::unordered_map<std::size_t, std::set<std::vector<std::uint32_t>>> memo;
  const auto solve = [&](auto&& self, std::size_t x) -> const std::set<std::vector<std::uint32_t>>& {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    std::set<std::vector<std::uint32_t>> result;
    if (ElementLattice::is_identity(x)) {
      result.insert(std::vector<std::uint32_t>{});
    } else {
      for (std::uint32_t j = 0; j < lat.atom_count(); ++j) {
        auto q = lat.quotient_by_atom(x, j);
        if (!q || !lat.member(*q)) continue;
        for (const auto& rest : self(self, *q)) {
          auto z = rest;
          z.insert(std::upper_bound(z.begin(), z.end(), j), j);
          result.insert(std::move(z));
          if (result.size() > budget.factorization_cap) {
            fail(ErrorKind::kBudgetExceeded, "naive enumeration exceeds cap", result.size());
          }
        }
      }
    }
    return memo.emplace(x, std::move(result)).first->second;
  };
  const auto& all = solve(solve, id);
  std::vector<Factorization> zs;
  zs.reserve(all.size());
  for (const auto& z : all) zs.push_back(Factorization{z});
  return FactorizationSet(std::move(lattice), id, std::move(zs));
}

// ------------------------------------------------------------- bottleneck

int bottleneck_prim(const FactorizationSet& set, std::span<const std::uint32_t> subset) {
  const std::size_t n = subset.size();
  if (n < 2) return 0;
  const auto& zs = set.factorizations();
  std::vector<int> best(n, std::numeric_limits<int>::max());
  std::vector<char> done(n, 0);
  best[0] = 0;
  int worst = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && (pick == n || best[i] < best[pick])) pick = i;
    }
    done[pick] = 1;
    worst = std::max(worst, best[pick]);
    const auto& zp = zs[subset[pick]];
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i]) best[i] = std::min(best[i], distance(zp, zs[subset[i]]));
    }
  }
  return worst;
}

int bottleneck_kruskal(const FactorizationSet& set, std::span<const std::uint32_t> subset) {
  const std::size_t n = subset.size();
  if (n < 2) return 0;
  const auto& zs = set.factorizations();
  struct Edge {
    int d;
    std::uint32_t i;
    std::uint32_t j;
  };
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      edges.push_back({distance(zs[subset[i]], zs[subset[j]]), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.d < b.d; });
  UnionFind uf(n);
  for (const auto& e : edges) {
    if (uf.unite(e.i, e.j) && uf.components() == 1) return e.d;
  }
  return 0;
}

namespace {

/// Short factorizations of lattice elements, cached per length bound.
class ShortCache {
 public:
  ShortCache(const ElementLattice& lattice, const Budget& budget)
      : lattice_(lattice), budget_(budget) {}

  const std::vector<Factorization>& get(std::size_t x, int max_len) {
    if (max_len != bound_) {
      cache_.clear();
      bound_ = max_len;
    }
    auto it = cache_.find(x);
    if (it == cache_.end()) {
      it = cache_.emplace(x, short_factorizations(lattice_, x, max_len, budget_)).first;
    }
    return it->second;
  }

 private:
  const ElementLattice& lattice_;
  const Budget& budget_;
  int bound_ = -1;
  std::unordered_map<std::size_t, std::vector<Factorization>> cache_;
};

}  // namespace

int bottleneck_threshold(const FactorizationSet& set, std::span<const std::uint32_t> subset,
                         const Budget& budget) {
  const std::size_t n = subset.size();
  if (n < 2) return 0;
  const auto& zs = set.factorizations();
  const auto& lattice = set.lattice();
  std::unordered_map<Factorization, std::uint32_t, FactorizationHash> position;
  int longest = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    position.emplace(zs[subset[i]], i);
    longest = std::max(longest, static_cast<int>(zs[subset[i]].size()));
  }
  UnionFind uf(n);
  ShortCache shorts(lattice, budget);
  for (int bound = 2; bound <= longest; ++bound) {
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto& z = zs[subset[i]].atoms;
      bool connected = false;
      for_each_submultiset(z, bound, [&](const std::vector<std::uint32_t>& x,
                                         const std::vector<std::uint32_t>& rest) {
        const auto& ys = shorts.get(lattice.product(x), bound);
        for (const auto& y : ys) {
          // Replacements with both sides shorter were found at a lower bound.
          if (static_cast<int>(x.size()) < bound && static_cast<int>(y.size()) < bound) continue;
          if (y.atoms == x) continue;
          auto it = position.find(Factorization{merge_sorted(rest, y.atoms)});
          if (it == position.end()) continue;
          if (uf.unite(i, it->second) && uf.components() == 1) {
            connected = true;
            return true;
          }
        }
        return false;
      });
      if (connected) return bound;
    }
  }
  return longest;
}

int bottleneck(const FactorizationSet& set, std::span<const std::uint32_t> subset,
               const Budget& budget) {
  if (subset.size() <= kPrimLimit) return bottleneck_prim(set, subset);
  return bottleneck_threshold(set, subset, budget);
}

namespace {

std::vector<std::uint32_t> all_positions(const FactorizationSet& set) {
  std::vector<std::uint32_t> out(set.size());
  std::iota(out.begin(), out.end(), 0U);
  return out;
}

/// min d(z, z') over z of length k, z' of length l.
int cross_distance(const FactorizationSet& set, int k, int l, const Budget& budget) {
  auto from = set.layer(k);
  auto to = set.layer(l);
  const int floor = 2 + std::abs(l - k);
  const auto& zs = set.factorizations();
  if (static_cast<std::uint64_t>(from.size()) * to.size() <= kCrossPairLimit) {
    int best = std::numeric_limits<int>::max();
    for (auto i : from) {
      for (auto j : to) {
        best = std::min(best, distance(zs[i], zs[j]));
        if (best <= floor) return best;
      }
    }
    return best;
  }
  // Replace X inside a factorization of the smaller layer by some Y with
  // |Y| - |X| = l' - k', where l' is the other layer.
  const bool from_short = from.size() <= to.size();
  const auto& source = from_short ? from : to;
  const int delta = from_short ? (l - k) : (k - l);
  ShortCache shorts(set.lattice(), budget);
  for (int bound = floor; bound <= std::max(k, l); ++bound) {
    for (auto i : source) {
      bool found = false;
      for_each_submultiset(zs[i].atoms, bound, [&](const std::vector<std::uint32_t>& x,
                                                   const std::vector<std::uint32_t>&) {
        const int want = static_cast<int>(x.size()) + delta;
        if (want < 1 || want > bound) return false;
        for (const auto& y : shorts.get(set.lattice().product(x), bound)) {
          if (static_cast<int>(y.size()) == want) {
            found = true;
            return true;
          }
        }
        return false;
      });
      if (found) return bound;
    }
  }
  return std::max(k, l);
}

}  // namespace

int catenary(const FactorizationSet& set, const Budget& budget) {
  const auto all = all_positions(set);
  return bottleneck(set, all, budget);
}

int catenary_eq(const FactorizationSet& set, const Budget& budget) {
  int worst = 0;
  for (int k : set.lengths().to_vector()) {
    const auto layer = set.layer(k);
    worst = std::max(worst, bottleneck(set, layer, budget));
  }
  return worst;
}

int catenary_adj(const FactorizationSet& set, const Budget& budget) {
  const auto lengths = set.lengths().to_vector();
  int worst = 0;
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
    worst = std::max(worst, cross_distance(set, lengths[i], lengths[i + 1], budget));
  }
  return worst;
}

int catenary_mon(const FactorizationSet& set, const Budget& budget) {
  return std::max(catenary_eq(set, budget), catenary_adj(set, budget));
}

int catenary(const AtomicOracle& oracle, const MonoidElement& a, const Budget& budget) {
  return catenary(factorizations(oracle, a, budget), budget);
}

int catenary_eq(const AtomicOracle& oracle, const MonoidElement& a, const Budget& budget) {
  return catenary_eq(factorizations(oracle, a, budget), budget);
}

int catenary_adj(const AtomicOracle& oracle, const MonoidElement& a, const Budget& budget) {
  return catenary_adj(factorizations(oracle, a, budget), budget);
}

int catenary_mon(const AtomicOracle& oracle, const MonoidElement& a, const Budget& budget) {
  return catenary_mon(factorizations(oracle, a, budget), budget);
}

InvariantReport invariants(const FactorizationSet& set, const Budget& budget) {
  InvariantReport r;
  r.element = set.element();
  r.element_text = set.lattice().oracle().format(r.element);
  r.z_count = set.size();
  const auto lengths = set.lengths();
  r.lengths = lengths.to_vector();
  r.c = catenary(set, budget);
  r.c_eq = catenary_eq(set, budget);
  r.c_adj = catenary_adj(set, budget);
  r.c_mon = std::max(r.c_eq, r.c_adj);
  if (lengths.size() == 1) r.flags.emplace_back("half_factorial");
  if (lengths.is_interval()) r.flags.emplace_back("interval");
  if (lengths.size() == set.size()) r.flags.emplace_back("length_factorial");
  return r;
}

InvariantReport invariants(const AtomicOracle& oracle, const MonoidElement& a,
                           const Budget& budget) {
  return invariants(factorizations(oracle, a, budget), budget);
}

// ------------------------------------------------------------ length sets

std::vector<LengthSet> lattice_length_sets(const ElementLattice& lattice) {
  std::vector<LengthSet> out(lattice.size());
  out[0] = LengthSet::single(0);
  for (std::size_t x = 1; x < lattice.size(); ++x) {
    if (!lattice.member(x)) continue;
    for (std::size_t j = 0; j < lattice.atom_count(); ++j) {
      auto q = lattice.quotient_by_atom(x, j);
      if (q && lattice.member(*q)) out[x].merge_shifted(out[*q], 1);
    }
  }
  return out;
}

LengthSet length_set(const AtomicOracle& oracle, const MonoidElement& a, const Budget& budget) {
  if (!oracle.contains(a)) {
    fail(ErrorKind::kNotAMember, oracle.format(a) + " is not in the monoid");
  }
  ElementLattice lattice(oracle, a, budget);
  return lattice_length_sets(lattice)[lattice.top_id()];
}

LengthUnion union_of_lengths(const AtomicOracle& oracle, std::span<const MonoidElement> domain,
                             int k, const Budget& budget) {
  if (k < 0) fail(ErrorKind::kBadParameters, "k must be non-negative");
  LengthUnion result;
  if (k == 0) {
    // Only the identity has a factorization of length 0.
    result.lengths = {0};
    result.complete = true;
    result.contributing = 1;
    return result;
  }
  LengthSet acc;
  for (const auto& a : domain) {
    if (!oracle.contains(a)) continue;
    const auto l = length_set(oracle, a, budget);
    if (!l.contains(k)) continue;
    acc.merge_shifted(l, 0);
    ++result.contributing;
  }
  result.lengths = acc.to_vector();
  return result;
}

HalfFactorialResult is_half_factorial_within(const AtomicOracle& oracle,
                                             std::span<const MonoidElement> domain,
                                             const Budget& budget) {
  HalfFactorialResult result;
  for (const auto& a : domain) {
    if (!oracle.contains(a)) continue;
    ++result.checked;
    if (length_set(oracle, a, budget).size() > 1) {
      result.half_factorial = false;
      result.witness = a;
      return result;
    }
  }
  return result;
}

std::optional<PrimalityWitness> primality_witness(const AtomicOracle& oracle,
                                                  const MonoidElement& u,
                                                  std::span<const MonoidElement> domain,
                                                  const Budget& budget) {
  if (!oracle.contains(u)) fail(ErrorKind::kNotAMember, oracle.format(u) + " is not in the monoid");
  if (!oracle.is_atom(u)) fail(ErrorKind::kBadParameters, oracle.format(u) + " is not an atom");
  std::uint64_t checks = 0;
  const auto is_witness = [&](const MonoidElement& a, const MonoidElement& b) {
    if (++checks > budget.enumeration_cap) {
      fail(ErrorKind::kBudgetExceeded, "primality witness search exceeds cap", checks);
    }
    return oracle.contains(a) && oracle.contains(b) && !oracle.divides_in(u, a) &&
           !oracle.divides_in(u, b) && oracle.divides_in(u, combine(a, b));
  };
  std::vector<MonoidElement> gaps;
  std::vector<MonoidElement> members;
  for (const auto& x : domain) (oracle.contains(x) ? members : gaps).push_back(x);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const auto a = combine(u, gaps[i]);
    for (std::size_t j = i; j < gaps.size(); ++j) {
      const auto b = combine(u, gaps[j]);
      if (is_witness(a, b)) return PrimalityWitness{a, b};
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i; j < members.size(); ++j) {
      if (is_witness(members[i], members[j])) return PrimalityWitness{members[i], members[j]};
    }
  }
  return std::nullopt;
}

// ----------------------------------------------------------- certificates

WindowCertificate certify_window(const ElementLattice& lattice) {
  const std::size_t n = lattice.size();
  WindowCertificate cert;
  cert.lengths = lattice_length_sets(lattice);
  cert.catenary_at_most_3.assign(n, 0);
  cert.adjacent_exactly_3.assign(n, 0);
  cert.catenary_at_most_3[0] = 1;
  cert.adjacent_exactly_3[0] = 1;

  // Elements b with {2, 3} in L(b): a length-2 and a length-3 factorization
  // of b are exactly the swaps realising distance 3 between adjacent lengths.
  std::vector<std::size_t> two_three;
  for (std::size_t y = 1; y < n; ++y) {
    if (lattice.member(y) && cert.lengths[y].contains(2) && cert.lengths[y].contains(3)) {
      two_three.push_back(y);
    }
  }

  for (std::size_t x = 1; x < n; ++x) {
    if (!lattice.member(x)) continue;
    const auto& lx = cert.lengths[x];

    // c(x) <= 3 iff every Z(x/u) is 3-connected and the classes u * Z(x/u)
    // are linked: two classes share a factorization when x/(u w) lies in H,
    // and all factorizations of length <= 3 are mutually within distance 3.
    const auto divisors = lattice.divisor_atoms(x);
    std::vector<std::size_t> quotients;
    bool inherited = true;
    for (auto j : divisors) {
      const std::size_t q = *lattice.quotient_by_atom(x, j);
      quotients.push_back(q);
      inherited = inherited && cert.catenary_at_most_3[q] != 0;
    }
    if (inherited) {
      const std::size_t m = divisors.size();
      UnionFind uf(m + 1);
      for (std::size_t i = 0; i < m; ++i) {
        if (cert.lengths[quotients[i]].min() <= 2) uf.unite(i, m);
      }
      for (std::size_t i = 0; i < m && uf.components() > 1; ++i) {
        for (std::size_t k = i + 1; k < m; ++k) {
          if (uf.find(i) == uf.find(k)) continue;
          auto q = lattice.quotient_by_atom(quotients[i], divisors[k]);
          if (q && lattice.member(*q)) uf.unite(i, k);
        }
      }
      bool connected = true;
      for (std::size_t i = 1; i < m; ++i) connected = connected && uf.find(i) == uf.find(0);
      cert.catenary_at_most_3[x] = connected ? 1 : 0;
    }

    if (lx.size() <= 1) {
      cert.adjacent_exactly_3[x] = 1;
    } else if (lx.is_interval()) {
      LengthSet reachable;
      for (auto b : two_three) {
        auto q = lattice.quotient(x, b);
        if (q && lattice.member(*q)) reachable.merge_shifted(cert.lengths[*q], 2);
      }
      bool all = true;
      for (int k = lx.min(); k < lx.max() && all; ++k) all = reachable.contains(k);
      cert.adjacent_exactly_3[x] = all ? 1 : 0;
    }
  }
  return cert;
}

}  // namespace condmon
