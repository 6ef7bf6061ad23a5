#include "condmon/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "condmon/errors.hpp"
#include "condmon/factor.hpp"

namespace condmon {

IdealExtensionMonoid deep_hole_monoid(std::size_t s, std::int64_t alpha) {
  if (s < 1 || alpha < 1) fail(ErrorKind::kBadParameters, "deep hole monoid needs s >= 1, alpha >= 1");
  return IdealExtensionMonoid(s, {ExponentVector(std::vector<std::int64_t>(s, alpha))});
}

IdealExtensionMonoid power_primary_monoid(const ExponentVector& alphas,
                                          std::optional<FiniteAbelianGroup> unit_group) {
  if (alphas.dimension() == 0) fail(ErrorKind::kBadParameters, "power primary monoid needs s >= 1");
  for (auto a : alphas.coords()) {
    if (a < 1) fail(ErrorKind::kBadParameters, "every exponent must be at least 1");
  }
  return IdealExtensionMonoid(alphas.dimension(), {alphas}, std::move(unit_group));
}

IdealExtensionMonoid cycle_monoid(std::int64_t m) {
  if (m < 3) fail(ErrorKind::kBadParameters, "cycle monoid needs m >= 3");
  const auto s = static_cast<std::size_t>(2 * m);
  std::vector<ExponentVector> gens;
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<std::int64_t> v(s, 0);
    v[i] = 1;
    v[(i + 1) % s] = 1;
    gens.emplace_back(std::move(v));
  }
  return IdealExtensionMonoid(s, std::move(gens));
}

ExponentVector cycle_all_ones(std::int64_t m) {
  if (m < 3) fail(ErrorKind::kBadParameters, "cycle monoid needs m >= 3");
  return ExponentVector(std::vector<std::int64_t>(static_cast<std::size_t>(2 * m), 1));
}

std::string_view to_string(IntervalRecipe r) {
  switch (r) {
    case IntervalRecipe::kAtomAndInverse: return "atom-and-inverse";
    case IntervalRecipe::kZerosAndPair: return "zeros-and-pair";
    case IntervalRecipe::kLargeOrder: return "large-order";
    case IntervalRecipe::kElementaryTwo: return "elementary-two";
    case IntervalRecipe::kIndependent: return "independent";
    case IntervalRecipe::kSearch: return "search";
  }
  return "unknown";
}

namespace {

GSequence negate(const GSequence& s) {
  GSequence out(s.group());
  for (const auto& [g, k] : s.multiplicities()) out.add(-g, k);
  return out;
}

ZeroSumContext support_context(const GSequence& s) {
  std::vector<GroupElement> support;
  for (const auto& [g, k] : s.multiplicities()) support.push_back(g);
  return ZeroSumContext(s.group(), std::move(support));
}

std::optional<GroupElement> first_nonzero(const FiniteAbelianGroup& g) {
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (g.cyclic_orders()[i] > 1) return g.generator(i);
  }
  return std::nullopt;
}

bool is_elementary_two(const FiniteAbelianGroup& g) {
  const auto orders = g.cyclic_orders();
  bool any = false;
  for (auto n : orders) {
    if (n != 1 && n != 2) return false;
    any = any || n == 2;
  }
  return any;
}

std::optional<IntervalSequence> try_atom_and_inverse(const FiniteAbelianGroup& g, int l,
                                                     const Budget& budget) {
  const auto atoms = minimal_zero_sum_sequences(ZeroSumContext::full(g), l, budget);
  for (const auto& u : atoms) {
    if (u.length() == l) return IntervalSequence{negate(u) * u, IntervalRecipe::kAtomAndInverse, {}};
  }
  return std::nullopt;
}

std::optional<IntervalSequence> try_large_order(const FiniteAbelianGroup& group, int k, int n) {
  for (const auto& g : group.enumerate_elements()) {
    if (order_of(g) <= 2 * n) continue;
    GSequence s(group);
    s.add(group.zero(), k);
    s.add(g, n);
    s.add(-scalar_mul(n, g));
    s.add(-g, n);
    s.add(scalar_mul(n, g));
    return IntervalSequence{s, IntervalRecipe::kLargeOrder, {}};
  }
  return std::nullopt;
}

std::optional<IntervalSequence> try_independent(const FiniteAbelianGroup& group, int k, int n) {
  const auto orders = group.cyclic_orders();
  const auto exp = group.exponent();
  std::vector<GroupElement> e;
  // e_1 from a summand of order exp(G), the others from further summands.
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == exp) {
      e.push_back(group.generator(i));
      for (std::size_t j = 0; j < orders.size() && static_cast<int>(e.size()) < n; ++j) {
        if (j != i && orders[j] > 1) e.push_back(group.generator(j));
      }
      break;
    }
  }
  if (static_cast<int>(e.size()) < n) return std::nullopt;
  GroupElement e0 = group.zero();
  for (const auto& x : e) e0 = e0 - x;
  if (n == 1 && e0 == e[0] && k < 4) return std::nullopt;
  GSequence a(group);
  a.add(e0);
  for (const auto& x : e) a.add(x);
  GSequence s(group);
  s.add(group.zero(), k);
  return IntervalSequence{s * a * negate(a), IntervalRecipe::kIndependent, {}};
}

/// Walks the k-multisets of atoms of F_iota(G), longest atoms first, and
/// returns the first product S with L(S) = [k, l]. `exhaustive` reports
/// whether every product was examined.
std::optional<IntervalSequence> search_products(const FiniteAbelianGroup& g, int k, int l,
                                                const Budget& budget, bool& exhaustive) {
  exhaustive = false;
  const auto ctx = ZeroSumContext::full(g);
  std::vector<GSequence> atoms;
  try {
    atoms = global_atoms_F_iota(ctx, budget);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kBudgetExceeded) return std::nullopt;
    throw;
  }
  const auto oracle = iota_monoid(ctx, budget);
  const std::uint64_t cap = std::max<std::uint64_t>(1, budget.enumeration_cap / 50);
  std::vector<ExponentVector> vectors;
  for (const auto& a : atoms) vectors.push_back(ctx.to_vector(a));
  const auto zero_pos = ctx.position(g.zero());
  std::unordered_set<ExponentVector> seen;
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  std::optional<IntervalSequence> found;
  bool over = false;
  const auto rec = [&](auto&& self, std::size_t depth, std::size_t start,
                       const ExponentVector& acc) -> void {
    if (found || over) return;
    if (depth == pick.size()) {
      // Atoms other than 0 have length at least 2, which bounds max L.
      const std::int64_t zeros = zero_pos ? acc[*zero_pos] : 0;
      if (zeros + (length(acc) - zeros) / 2 < l) return;
      if (!seen.insert(acc).second) return;
      if (seen.size() > cap) {
        over = true;
        return;
      }
      const auto lengths = length_set(oracle, oracle.make(acc), budget);
      if (lengths.min() == k && lengths.max() == l && lengths.is_interval()) {
        found = IntervalSequence{ctx.to_sequence(acc), IntervalRecipe::kSearch, {}};
      }
      return;
    }
    // Longest atoms first: long products are the ones with large max L.
    for (std::size_t i = start; i-- > 0 && !found && !over;) {
      self(self, depth + 1, i + 1, acc + vectors[i]);
    }
  };
  rec(rec, 0, vectors.size(), ExponentVector(ctx.support().size()));
  exhaustive = !over;
  return found;
}

}  // namespace

IntervalSequence interval_sequence(const FiniteAbelianGroup& g, int k, int l, bool verify,
                                   const Budget& budget) {
  if (k < 2 || l <= k) fail(ErrorKind::kBadParameters, "need 2 <= k < l");
  if (g.is_trivial()) fail(ErrorKind::kGroupTooSmall, "the trivial group admits no such sequence");
  std::optional<IntervalSequence> out;
  if (k == 2) out = try_atom_and_inverse(g, l, budget);
  if (!out && l == k + 1) {
    const auto x = *first_nonzero(g);
    GSequence s(g);
    s.add(g.zero(), k);
    s.add(-x);
    s.add(x);
    out = IntervalSequence{s, IntervalRecipe::kZerosAndPair, {}};
  }
  if (!out && k >= 3) {
    const int n = l - k - 1;
    out = try_large_order(g, k, n);
    if (!out && is_elementary_two(g) && k == 3 && l == 5) {
      std::vector<GroupElement> gens;
      for (std::size_t i = 0; i < g.rank() && gens.size() < 2; ++i) {
        if (g.cyclic_orders()[i] == 2) gens.push_back(g.generator(i));
      }
      if (gens.size() == 2) {
        GSequence s(g);
        s.add(g.zero(), 2);
        s.add(gens[0], 2);
        s.add(gens[1], 2);
        s.add(gens[0] + gens[1], 2);
        out = IntervalSequence{s, IntervalRecipe::kElementaryTwo, {}};
      }
    } else if (!out) {
      out = try_independent(g, k, n);
    }
  }
  if (!out) {
    bool exhaustive = false;
    out = search_products(g, k, l, budget, exhaustive);
    if (!out) {
      const auto range = "[" + std::to_string(k) + "," + std::to_string(l) + "]";
      fail(ErrorKind::kGroupTooSmall,
           exhaustive ? "no sequence over " + g.to_string() + " has length set " + range
                      : "no recipe realises " + range + " over " + g.to_string() +
                            " and the product search hit its cap");
    }
  }
  if (verify) {
    const auto ctx = support_context(out->sequence);
    const auto oracle = iota_monoid(ctx, budget);
    const auto lengths = length_set(oracle, oracle.make(ctx.to_vector(out->sequence)), budget);
    out->lengths = lengths.to_vector();
    if (lengths.min() != k || lengths.max() != l || !lengths.is_interval()) {
      fail(ErrorKind::kVerificationFailed,
           "sequence " + to_string(out->sequence) + " has length set of min " +
               std::to_string(lengths.min()) + ", max " + std::to_string(lengths.max()));
    }
  }
  return *out;
}

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t checked_pow(std::int64_t base, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) {
      fail(ErrorKind::kBadParameters, "parameters overflow the group order");
    }
  }
  return out;
}

GSequence sequence_of(const FiniteAbelianGroup& g, std::initializer_list<GroupElement> xs) {
  GSequence s(g);
  for (const auto& x : xs) s.add(x);
  return s;
}

EqualCatenaryInstance large_order_instance(int n, EqualCatenaryParams params) {
  const std::int64_t nn = n;
  std::int64_t p = params.p;
  if (p == 0) {
    for (p = nn * nn; p <= 2 * nn * nn && !is_prime(p); ++p) {
    }
  }
  if (!is_prime(p)) fail(ErrorKind::kBadParameters, "p must be prime");
  std::int64_t order = params.order;
  if (order == 0) order = nn * checked_pow(2 * nn * nn, n) + 1;
  if (order < 2) fail(ErrorKind::kBadParameters, "order must be at least 2");
  const FiniteAbelianGroup group({order});
  const auto g = group.generator(0);

  std::vector<GroupElement> powers;  // p^i g
  GroupElement total = group.zero();
  for (int i = 0; i < n; ++i) {
    powers.push_back(scalar_mul(checked_pow(p, i), g));
    total = total + powers.back();
  }
  GSequence a_atom(group);  // A
  a_atom.add(-total);
  for (const auto& x : powers) a_atom.add(x);
  GSequence a0(group);  // A_0
  a0.add(scalar_mul(nn, total));
  for (const auto& x : powers) a0.add(-scalar_mul(nn, x));
  GSequence bn(group);  // B_n
  bn.add(scalar_mul(nn, total));
  bn.add(-total, nn);

  EqualCatenaryInstance inst{support_context(a0 * a_atom), a0, {a0}, {}};
  for (int i = 0; i < n; ++i) {
    inst.element = inst.element * a_atom;
    inst.first.push_back(a_atom);
    GSequence bi(group);
    bi.add(-scalar_mul(nn, powers[static_cast<std::size_t>(i)]));
    bi.add(powers[static_cast<std::size_t>(i)], nn);
    inst.second.push_back(bi);
  }
  inst.second.push_back(bn);
  return inst;
}

EqualCatenaryInstance bounded_exponent_instance(int n, EqualCatenaryParams params) {
  const std::int64_t p = params.p == 0 ? 2 : params.p;
  if (!is_prime(p)) fail(ErrorKind::kBadParameters, "p must be prime");
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const FiniteAbelianGroup group(std::vector<std::int64_t>(count, p));
  (void)group.cardinality();  // overflow guard
  const auto e = independent_elements(group, count, p);
  const auto at = [&](int i, int j) { return e[static_cast<std::size_t>(i * n + j)]; };

  GroupElement e0 = group.zero();
  std::vector<GroupElement> f(static_cast<std::size_t>(n), group.zero());
  std::vector<GroupElement> gj(static_cast<std::size_t>(n), group.zero());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      e0 = e0 + at(i, j);
      f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)] - at(i, j);
      gj[static_cast<std::size_t>(j)] = gj[static_cast<std::size_t>(j)] - at(i, j);
    }
  }
  // U_0 pairs e_0 with the column sums and V_0 with the row sums, so that both
  // products equal e_0 prod f_i prod g_j prod e_ij.
  GSequence u0 = sequence_of(group, {e0});
  GSequence v0 = sequence_of(group, {e0});
  for (int j = 0; j < n; ++j) u0.add(gj[static_cast<std::size_t>(j)]);
  for (int i = 0; i < n; ++i) v0.add(f[static_cast<std::size_t>(i)]);

  std::vector<GSequence> first{u0};
  std::vector<GSequence> second{v0};
  for (int i = 0; i < n; ++i) {
    GSequence ui = sequence_of(group, {f[static_cast<std::size_t>(i)]});
    for (int j = 0; j < n; ++j) ui.add(at(i, j));
    first.push_back(ui);
  }
  for (int j = 0; j < n; ++j) {
    GSequence vj = sequence_of(group, {gj[static_cast<std::size_t>(j)]});
    for (int i = 0; i < n; ++i) vj.add(at(i, j));
    second.push_back(vj);
  }
  GSequence a(group);
  for (const auto& u : first) a = a * u;
  return EqualCatenaryInstance{support_context(a), a, first, second};
}

}  // namespace

EqualCatenaryInstance equal_catenary_instance(int n, EqualCatenaryMode mode,
                                              EqualCatenaryParams params, bool verify,
                                              const Budget& budget) {
  if (n < 2) fail(ErrorKind::kBadParameters, "n must be at least 2");
  auto inst = mode == EqualCatenaryMode::kLargeOrder ? large_order_instance(n, params)
                                                     : bounded_exponent_instance(n, params);
  GSequence check(inst.element.group());
  for (const auto& u : inst.second) check = check * u;
  if (!(check == inst.element)) {
    fail(ErrorKind::kVerificationFailed, "the two atom lists have different products");
  }
  std::sort(inst.first.begin(), inst.first.end());
  std::sort(inst.second.begin(), inst.second.end());
  if (!verify) return inst;

  const auto& ctx = inst.context;
  const auto oracle = iota_monoid(ctx, budget);
  const auto set = factorizations(oracle, oracle.make(ctx.to_vector(inst.element)), budget);
  const auto layer = set.layer(n + 1);
  const auto as_atoms = [&](const Factorization& z) {
    std::vector<GSequence> out;
    for (auto j : z.atoms) out.push_back(ctx.to_sequence(set.atoms()[j].vec));
    std::sort(out.begin(), out.end());
    return out;
  };
  bool ok = layer.size() == 2;
  if (ok) {
    auto x = as_atoms(set.factorizations()[layer[0]]);
    auto y = as_atoms(set.factorizations()[layer[1]]);
    ok = ((x == inst.first && y == inst.second) || (x == inst.second && y == inst.first)) &&
         distance(set.factorizations()[layer[0]], set.factorizations()[layer[1]]) == n + 1;
  }
  if (!ok) {
    fail(ErrorKind::kVerificationFailed,
         "element " + to_string(inst.element) + " has " + std::to_string(layer.size()) +
             " factorizations of length " + std::to_string(n + 1));
  }
  return inst;
}

}  // namespace condmon
