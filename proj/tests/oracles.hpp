// Brute-force reference computations, written without the library's
// algorithms so that tests compare two independent derivations.
#ifndef CONDMON_TESTS_ORACLES_HPP
#define CONDMON_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "condmon/factor.hpp"
#include "condmon/group.hpp"

namespace oracle {

using Vec = std::vector<std::int64_t>;
using Member = std::function<bool(const Vec&)>;
/// A factorization as a sorted list of atom vectors.
using Fact = std::vector<Vec>;

inline Vec to_vec(const condmon::ExponentVector& v) { return Vec(v.coords().begin(), v.coords().end()); }

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

inline Vec minus(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

/// Every v with 0 <= v <= a, by odometer.
inline std::vector<Vec> divisors(const Vec& a) {
  std::vector<Vec> out;
  Vec v(a.size(), 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < a.size() && v[i] == a[i]) v[i++] = 0;
    if (i == a.size()) break;
    ++v[i];
  }
  return out;
}

/// Ideal membership: zero, or some generator lies below v.
inline Member ideal_member(std::vector<Vec> gens) {
  return [gens = std::move(gens)](const Vec& v) {
    if (is_zero(v)) return true;
    for (const auto& g : gens) {
      bool below = true;
      for (std::size_t i = 0; i < v.size(); ++i) below = below && g[i] <= v[i];
      if (below) return true;
    }
    return false;
  };
}

inline bool is_atom(const Member& member, const Vec& v) {
  if (is_zero(v) || !member(v)) return false;
  for (const auto& x : divisors(v)) {
    if (is_zero(x) || x == v) continue;
    if (member(x) && member(minus(v, x))) return false;
  }
  return true;
}

inline std::vector<Vec> atoms_dividing(const Member& member, const Vec& a) {
  std::vector<Vec> out;
  for (const auto& v : divisors(a)) {
    if (is_atom(member, v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {
inline void descend(const std::vector<Vec>& atoms, std::size_t from, const Vec& rest, Fact& current,
                    std::vector<Fact>& out) {
  if (is_zero(rest)) {
    out.push_back(current);
    return;
  }
  for (std::size_t j = from; j < atoms.size(); ++j) {
    bool fits = true;
    for (std::size_t i = 0; i < rest.size(); ++i) fits = fits && atoms[j][i] <= rest[i];
    if (!fits) continue;
    current.push_back(atoms[j]);
    descend(atoms, j, minus(rest, atoms[j]), current, out);
    current.pop_back();
  }
}
}  // namespace detail

/// Z(a) over the given atoms, each factorization sorted.
inline std::vector<Fact> factorizations(const Member& member, const Vec& a) {
  const auto atoms = atoms_dividing(member, a);
  std::vector<Fact> out;
  Fact current;
  detail::descend(atoms, 0, a, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Max of the two residual sizes after cancelling the common multiset.
inline int distance(const Fact& z, const Fact& w) {
  std::map<Vec, int> count;
  for (const auto& u : z) ++count[u];
  for (const auto& u : w) --count[u];
  int left = 0;
  int right = 0;
  for (const auto& [u, k] : count) {
    if (k > 0) left += k;
    if (k < 0) right -= k;
  }
  return std::max(left, right);
}

/// Max over pairs of the minimax path weight, by Floyd-Warshall.
inline int chain_degree(const std::vector<Fact>& zs) {
  const std::size_t n = zs.size();
  if (n < 2) return 0;
  std::vector<std::vector<int>> w(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = distance(zs[i], zs[j]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i][j] = std::min(w[i][j], std::max(w[i][k], w[k][j]));
    }
  }
  int worst = 0;
  for (const auto& row : w) worst = std::max(worst, *std::max_element(row.begin(), row.end()));
  return worst;
}

inline std::vector<Fact> layer(const std::vector<Fact>& zs, std::size_t k) {
  std::vector<Fact> out;
  for (const auto& z : zs) {
    if (z.size() == k) out.push_back(z);
  }
  return out;
}

inline std::vector<int> lengths(const std::vector<Fact>& zs) {
  std::set<int> l;
  for (const auto& z : zs) l.insert(static_cast<int>(z.size()));
  return {l.begin(), l.end()};
}

inline int catenary(const std::vector<Fact>& zs) { return chain_degree(zs); }

inline int catenary_eq(const std::vector<Fact>& zs) {
  int worst = 0;
  for (int k : lengths(zs)) worst = std::max(worst, chain_degree(layer(zs, static_cast<std::size_t>(k))));
  return worst;
}

inline int catenary_adj(const std::vector<Fact>& zs) {
  const auto l = lengths(zs);
  int worst = 0;
  for (std::size_t i = 0; i + 1 < l.size(); ++i) {
    int best = std::numeric_limits<int>::max();
    for (const auto& z : layer(zs, static_cast<std::size_t>(l[i]))) {
      for (const auto& w : layer(zs, static_cast<std::size_t>(l[i + 1]))) best = std::min(best, distance(z, w));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

/// The engine's factorizations in oracle form, sorted.
inline std::vector<Fact> engine_facts(const condmon::FactorizationSet& set) {
  std::vector<Fact> out;
  for (const auto& z : set.factorizations()) {
    Fact f;
    for (const auto& u : set.expand(z)) f.push_back(to_vec(u.vec));
    std::sort(f.begin(), f.end());
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Zero-sum freeness by trying every non-empty subset.
inline bool zero_sum_free(const std::vector<condmon::GroupElement>& s) {
  const std::size_t n = s.size();
  if (n == 0) return true;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    condmon::GroupElement sum = s[0].group().zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) sum = sum + s[i];
    }
    if (sum.is_zero()) return false;
  }
  return true;
}

}  // namespace oracle

#endif  // CONDMON_TESTS_ORACLES_HPP
