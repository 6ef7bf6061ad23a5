#include "condmon/ideal_extension.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "condmon/errors.hpp"

namespace condmon {

namespace {

/// Membership of every point of the box [0, upper] (identity included).
std::vector<char> membership_table(const AtomicOracle& h, const BoxIndex& box) {
  std::vector<char> member(box.size(), 0);
  std::vector<std::int64_t> coords;
  for (std::size_t i = 0; i < box.size(); ++i) {
    box.decode(i, coords);
    member[i] = (i == 0 || h.contains(h.make(ExponentVector(coords)))) ? 1 : 0;
  }
  return member;
}

/// Calls visit(index) for every divisor of the point with the given
/// coordinates, identity and the point itself included. Stops when visit
/// returns true; returns whether it stopped.
template <typename Visit>
bool for_each_divisor(const BoxIndex& box, const std::vector<std::int64_t>& coords, Visit&& visit) {
  const std::size_t s = coords.size();
  const auto rec = [&](auto&& self, std::size_t i, std::size_t idx) -> bool {
    if (i == s) return visit(idx);
    for (std::int64_t c = 0; c <= coords[i]; ++c) {
      if (self(self, i + 1, idx + static_cast<std::size_t>(c) * box.stride(i))) return true;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

/// Atom flags over a box, by split search against the membership table.
std::vector<char> atom_table(const BoxIndex& box, const std::vector<char>& member) {
  std::vector<char> atom(box.size(), 0);
  std::vector<std::int64_t> coords;
  for (std::size_t v = 1; v < box.size(); ++v) {
    if (!member[v]) continue;
    box.decode(v, coords);
    const bool splits = for_each_divisor(box, coords, [&](std::size_t u) {
      return u != 0 && u != v && member[u] && member[v - u];
    });
    atom[v] = splits ? 0 : 1;
  }
  return atom;
}

}  // namespace

// --------------------------------------------------- IdealExtensionMonoid

IdealExtensionMonoid::IdealExtensionMonoid(std::size_t s, std::vector<ExponentVector> generators,
                                           std::optional<FiniteAbelianGroup> unit_group)
    : s_(s),
      generators_(std::move(generators)),
      units_(unit_group.value_or(FiniteAbelianGroup())),
      has_units_(unit_group.has_value()) {
  if (generators_.empty()) fail(ErrorKind::kBadParameters, "at least one generator is required");
  for (const auto& g : generators_) {
    if (g.dimension() != s_) {
      fail(ErrorKind::kDimensionMismatch, "generator " + to_string(g) + " has dimension " +
                                              std::to_string(g.dimension()) + ", expected " +
                                              std::to_string(s_));
    }
    if (g.is_zero()) fail(ErrorKind::kBadParameters, "generator " + to_string(g) + " is zero");
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      if (i != j && divides(generators_[i], generators_[j])) {
        fail(ErrorKind::kBadParameters, "generators do not form an antichain: " +
                                            to_string(generators_[j]) + " is dominated by " +
                                            to_string(generators_[i]));
      }
    }
  }
  std::sort(generators_.begin(), generators_.end());
}

void IdealExtensionMonoid::check_dimension(const ExponentVector& v) const {
  if (v.dimension() != s_) {
    fail(ErrorKind::kDimensionMismatch, "element " + to_string(v) + " has dimension " +
                                            std::to_string(v.dimension()) + ", monoid has " +
                                            std::to_string(s_));
  }
}

bool IdealExtensionMonoid::in_ideal(const ExponentVector& v) const {
  check_dimension(v);
  return std::any_of(generators_.begin(), generators_.end(),
                     [&](const ExponentVector& g) { return divides(g, v); });
}

bool IdealExtensionMonoid::contains(const ExponentVector& v) const {
  return v.is_zero() ? (check_dimension(v), true) : in_ideal(v);
}

bool IdealExtensionMonoid::contains(const MonoidElement& x) const {
  if (!(x.unit.group() == units_)) {
    fail(ErrorKind::kGroupMismatch, "unit part lies in " + x.unit.group().to_string() +
                                        ", expected " + units_.to_string());
  }
  if (x.vec.is_zero()) return (check_dimension(x.vec), x.unit.is_zero());
  return in_ideal(x.vec);
}

bool IdealExtensionMonoid::is_atom(const ExponentVector& v) const {
  if (!in_ideal(v)) return false;
  for (const auto& g : generators_) {
    auto rest = checked_subtract(v, g);
    if (rest && in_ideal(*rest)) return false;
  }
  return true;
}

bool IdealExtensionMonoid::is_atom(const MonoidElement& x) const {
  return contains(x) && is_atom(x.vec);
}

std::vector<MonoidElement> IdealExtensionMonoid::atoms_below(const ExponentVector& upper) const {
  check_dimension(upper);
  const auto units = units_.enumerate_elements(4096);
  std::vector<MonoidElement> out;
  for (const auto& v : divisor_enumeration(upper)) {
    if (!is_atom(v)) continue;
    for (const auto& e : units) out.push_back({e, v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// -------------------------------------------------------- PredicateMonoid

PredicateMonoid::PredicateMonoid(std::size_t s, Predicate member, std::string name,
                                 Formatter formatter)
    : s_(s), member_(std::move(member)), name_(std::move(name)), formatter_(std::move(formatter)) {}

std::string PredicateMonoid::format(const MonoidElement& x) const {
  return formatter_ ? formatter_(x.vec) : to_string(x);
}

bool PredicateMonoid::contains(const MonoidElement& x) const {
  if (x.vec.dimension() != s_) {
    fail(ErrorKind::kDimensionMismatch, "element " + to_string(x.vec) + " has dimension " +
                                            std::to_string(x.vec.dimension()) +
                                            ", monoid has " + std::to_string(s_));
  }
  if (x.vec.is_zero()) return x.unit.is_zero();
  return member_(x.vec);
}

bool PredicateMonoid::is_atom(const MonoidElement& x) const {
  if (x.vec.is_zero() || !contains(x)) return false;
  BoxIndex box(x.vec, 1'000'000);
  const auto member = membership_table(*this, box);
  std::vector<std::int64_t> coords(x.vec.coords().begin(), x.vec.coords().end());
  const std::size_t v = box.size() - 1;
  return !for_each_divisor(box, coords, [&](std::size_t u) {
    return u != 0 && u != v && member[u] && member[v - u];
  });
}

std::vector<MonoidElement> PredicateMonoid::atoms_below(const ExponentVector& upper) const {
  BoxIndex box(upper, 1'000'000);
  const auto member = membership_table(*this, box);
  const auto atom = atom_table(box, member);
  std::vector<MonoidElement> out;
  for (std::size_t v = 0; v < box.size(); ++v) {
    if (atom[v]) out.push_back(make(box.vector_at(v)));
  }
  return out;
}

PredicateMonoid diagonal_monoid() {
  return PredicateMonoid(
      2, [](const ExponentVector& v) { return v[0] == v[1]; }, "diagonal");
}

PredicateMonoid free_monoid(std::size_t s) {
  return PredicateMonoid(
      s, [](const ExponentVector&) { return true; }, "free");
}

bool is_atom_by_splits(const AtomicOracle& oracle, const ExponentVector& v,
                       std::int64_t length_cap) {
  if (length(v) > length_cap) {
    fail(ErrorKind::kBudgetExceeded, "split search on " + to_string(v) + " exceeds length cap " +
                                         std::to_string(length_cap));
  }
  const auto x = oracle.make(v);
  if (v.is_zero() || !oracle.contains(x)) return false;
  for (const auto& u : divisor_enumeration(v)) {
    if (u.is_zero() || u == v) continue;
    if (oracle.contains(oracle.make(u)) && oracle.contains(oracle.make(*checked_subtract(v, u)))) {
      return false;
    }
  }
  return true;
}

// ----------------------------------------------------- structural queries

std::vector<ExponentVector> minimal_elements(const IdealExtensionMonoid& h) {
  for (const auto& g : h.generators()) {
    if (!h.is_atom(g)) {
      fail(ErrorKind::kVerificationFailed, "minimal element " + to_string(g) + " is not an atom");
    }
  }
  return h.generators();
}

bool gap_set_is_finite(const IdealExtensionMonoid& h) {
  for (std::size_t i = 0; i < h.dimension(); ++i) {
    const bool axis = std::any_of(h.generators().begin(), h.generators().end(),
                                  [&](const ExponentVector& g) {
                                    for (std::size_t j = 0; j < g.dimension(); ++j) {
                                      if (j != i && g[j] != 0) return false;
                                    }
                                    return true;
                                  });
    if (!axis) return false;
  }
  return true;
}

GapSet gap_set(const IdealExtensionMonoid& h, const Box& window, std::uint64_t cap) {
  if (window.dimension() != h.dimension()) {
    fail(ErrorKind::kDimensionMismatch, "window dimension differs from the monoid");
  }
  GapSet result;
  for (const auto& v : box_enumeration(window, cap)) {
    if (!v.is_zero() && !h.in_ideal(v)) result.gaps.push_back(v);
  }
  if (gap_set_is_finite(h)) {
    // A gap has v_i < m_i on every axis, m_i the axis generator on i.
    bool covers = true;
    for (std::size_t i = 0; i < h.dimension(); ++i) {
      std::int64_t m = 0;
      for (const auto& g : h.generators()) {
        if (length(g) == g[i]) m = (m == 0) ? g[i] : std::min(m, g[i]);
      }
      covers = covers && window.upper()[i] >= m - 1;
    }
    result.complete = covers;
  }
  return result;
}

GapAbsorptionResult is_gap_absorbing(const AtomicOracle& h, const Box& window,
                                     const Budget& budget) {
  if (window.dimension() != h.dimension()) {
    fail(ErrorKind::kDimensionMismatch, "window dimension differs from the monoid");
  }
  const BoxIndex box(window.upper(), budget.enumeration_cap);
  const auto member = membership_table(h, box);
  std::vector<char> atom(box.size(), 0);
  std::vector<std::size_t> atoms;
  for (const auto& a : h.atoms_below(window.upper())) {
    const std::size_t idx = box.index(a.vec);
    if (!atom[idx]) atoms.push_back(idx);
    atom[idx] = 1;
  }
  std::sort(atoms.begin(), atoms.end());

  GapAbsorptionResult result;
  std::vector<std::int64_t> g;
  std::vector<std::int64_t> u;
  for (std::size_t gi = 1; gi < box.size(); ++gi) {
    if (member[gi]) continue;
    box.decode(gi, g);
    for (auto ui : atoms) {
      box.decode(ui, u);
      bool fits = true;
      for (std::size_t i = 0; i < g.size() && fits; ++i) fits = g[i] + u[i] <= window.upper()[i];
      if (!fits) continue;
      ++result.checked;
      const std::size_t si = gi + ui;
      bool ok = member[si] && atom[si];
      if (member[si] && !ok) {
        std::vector<std::int64_t> sum;
        box.decode(si, sum);
        ok = for_each_divisor(box, sum, [&](std::size_t a) { return atom[a] && atom[si - a]; });
      }
      if (!ok) {
        result.absorbing = false;
        result.counterexample =
            GapAbsorptionFailure{ExponentVector(g), ExponentVector(u), box.vector_at(si)};
        return result;
      }
    }
  }
  return result;
}

std::int64_t cmonoid_alpha(const IdealExtensionMonoid& h) {
  std::int64_t alpha = 0;
  for (const auto& g : h.generators()) {
    for (auto c : g.coords()) alpha = std::max(alpha, c);
  }
  return alpha;
}

std::optional<ExponentVector> alpha_criterion_counterexample(const IdealExtensionMonoid& h) {
  const std::int64_t alpha = cmonoid_alpha(h);
  const std::size_t s = h.dimension();
  for (const auto& a : box_enumeration(Box::cube(s, 2 * alpha))) {
    for (std::size_t j = 0; j < s; ++j) {
      if (a[j] < alpha) continue;
      if (h.contains(a) != h.contains(a + ExponentVector::unit(s, j, alpha))) return a;
    }
  }
  return std::nullopt;
}

namespace {

/// Residual-set signature of y: x + y in H for every x in the cube.
std::vector<char> signature(const IdealExtensionMonoid& h, const std::vector<ExponentVector>& cube,
                            const ExponentVector& y) {
  std::vector<char> sig(cube.size());
  for (std::size_t i = 0; i < cube.size(); ++i) sig[i] = h.contains(cube[i] + y) ? 1 : 0;
  return sig;
}

}  // namespace

ClassSemigroup class_semigroup(const IdealExtensionMonoid& h, std::optional<std::int64_t> cap) {
  if (h.has_unit_group()) {
    fail(ErrorKind::kBadParameters, "the class semigroup is computed for reduced monoids only");
  }
  const std::int64_t alpha = cmonoid_alpha(h);
  ClassSemigroup result;
  result.cap = cap.value_or(alpha);
  if (result.cap < alpha) fail(ErrorKind::kBadParameters, "cap must be at least alpha");
  const std::size_t s = h.dimension();
  const auto cube = box_enumeration(Box::cube(s, result.cap));
  const BoxIndex box(ExponentVector(std::vector<std::int64_t>(s, result.cap)), cube.size());

  std::map<std::vector<char>, std::size_t> classes;
  std::vector<std::size_t> class_of(cube.size());
  for (std::size_t i = 0; i < cube.size(); ++i) {
    auto [it, inserted] = classes.emplace(signature(h, cube, cube[i]), result.representatives.size());
    if (inserted) result.representatives.push_back(cube[i]);
    class_of[i] = it->second;
  }
  const std::size_t n = result.representatives.size();
  result.table.assign(n, std::vector<std::size_t>(n));
  std::vector<std::int64_t> capped(s);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < s; ++k) {
        capped[k] = std::min(result.representatives[i][k] + result.representatives[j][k], result.cap);
      }
      result.table[i][j] = class_of[box.index(capped)];
    }
  }
  return result;
}

std::size_t class_count_uncapped(const IdealExtensionMonoid& h, std::int64_t side) {
  const auto cube = box_enumeration(Box::cube(h.dimension(), side));
  std::map<std::vector<char>, std::size_t> classes;
  for (const auto& y : cube) classes.emplace(signature(h, cube, y), classes.size());
  return classes.size();
}

}  // namespace condmon
