#include <random>

#include <gtest/gtest.h>

#include "condmon/errors.hpp"
#include "condmon/ideal_extension.hpp"
#include "oracles.hpp"

using namespace condmon;

namespace {

IdealExtensionMonoid gens(std::vector<ExponentVector> g) {
  const auto s = g.front().dimension();
  return IdealExtensionMonoid(s, std::move(g));
}

std::vector<ExponentVector> vectors_of(const std::vector<MonoidElement>& xs) {
  std::vector<ExponentVector> out;
  for (const auto& x : xs) out.push_back(x.vec);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(IdealExtension, Membership) {
  const auto h = gens({{1, 1}});
  EXPECT_TRUE(h.contains(ExponentVector{0, 0}));
  EXPECT_TRUE(h.contains(ExponentVector{2, 3}));
  EXPECT_FALSE(h.contains(ExponentVector{2, 0}));
}

TEST(IdealExtension, AtomTest) {
  const auto h = gens({{1, 1}});
  EXPECT_TRUE(h.is_atom(ExponentVector{1, 2}));
  EXPECT_FALSE(h.is_atom(ExponentVector{2, 2}));
  EXPECT_FALSE(h.is_atom(ExponentVector{2, 0}));
  EXPECT_FALSE(h.is_atom(ExponentVector{0, 0}));
}

TEST(IdealExtension, AtomsDividing) {
  const auto h = gens({{1, 1}});
  EXPECT_EQ(vectors_of(h.atoms_dividing(h.make({3, 3}))),
            (std::vector<ExponentVector>{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {3, 1}}));
  EXPECT_EQ(vectors_of(h.atoms_dividing(h.make({1, 1}))), (std::vector<ExponentVector>{{1, 1}}));
  const auto h2 = gens({{2, 2}});
  EXPECT_EQ(vectors_of(h2.atoms_dividing(h2.make({4, 4}))),
            (std::vector<ExponentVector>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4}, {4, 2}, {4, 3}}));
}

TEST(IdealExtension, AtomsDividingNonMember) {
  const auto h = gens({{1, 1}});
  try {
    (void)h.atoms_dividing(h.make({2, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotAMember);
  }
}

TEST(IdealExtension, AtomTestAgainstSplitSearch) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::int64_t> coord(0, 4);
  for (int round = 0; round < 40; ++round) {
    const std::size_t s = 1 + round % 3;
    std::vector<ExponentVector> raw;
    for (int i = 0; i < 3; ++i) {
      std::vector<std::int64_t> c(s);
      for (auto& x : c) x = coord(rng);
      raw.emplace_back(c);
    }
    auto mins = dickson_min(raw);
    mins.erase(std::remove_if(mins.begin(), mins.end(), [](const auto& v) { return v.is_zero(); }), mins.end());
    if (mins.empty()) continue;
    const IdealExtensionMonoid h(s, mins);
    std::vector<oracle::Vec> g;
    for (const auto& m : mins) g.push_back(oracle::to_vec(m));
    const auto member = oracle::ideal_member(g);
    for (const auto& v : oracle::divisors(oracle::Vec(s, 6))) {
      const ExponentVector ev(v);
      EXPECT_EQ(h.contains(ev), member(v)) << to_string(ev);
      EXPECT_EQ(h.is_atom(ev), oracle::is_atom(member, v)) << to_string(ev);
      EXPECT_EQ(h.is_atom(ev), is_atom_by_splits(h, ev));
    }
  }
}

TEST(IdealExtension, GeneratorValidation) {
  try {
    (void)gens({{1, 1}, {2, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadParameters);
    EXPECT_NE(std::string(e.what()).find("(2,2)"), std::string::npos);
  }
  EXPECT_THROW((void)gens({{0, 0}}), Error);
  EXPECT_THROW((void)IdealExtensionMonoid(2, {}), Error);
  EXPECT_THROW((void)IdealExtensionMonoid(2, {ExponentVector{1}}), Error);
}

TEST(IdealExtension, MinimalElements) {
  EXPECT_EQ(minimal_elements(gens({{1, 1}})), (std::vector<ExponentVector>{{1, 1}}));
  EXPECT_EQ(minimal_elements(gens({{3, 0}, {0, 3}})), (std::vector<ExponentVector>{{0, 3}, {3, 0}}));
  const auto h = gens({{2, 1}, {1, 2}});
  const auto m = minimal_elements(h);
  EXPECT_EQ(m, (std::vector<ExponentVector>{{1, 2}, {2, 1}}));
  for (const auto& v : m) EXPECT_TRUE(h.is_atom(v));
}

TEST(IdealExtension, GapSets) {
  const auto line = gap_set(gens({{1, 1}}), Box(ExponentVector{3, 3}));
  EXPECT_FALSE(line.complete);
  EXPECT_EQ(line.gaps, (std::vector<ExponentVector>{{0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0}, {3, 0}}));
  const auto full = gap_set(gens({{1, 0}, {0, 1}}), Box(ExponentVector{3, 3}));
  EXPECT_TRUE(full.complete);
  EXPECT_TRUE(full.gaps.empty());
  const auto three = gap_set(gens({{2, 0}, {0, 2}, {1, 1}}), Box(ExponentVector{3, 3}));
  EXPECT_TRUE(three.complete);
  EXPECT_EQ(three.gaps, (std::vector<ExponentVector>{{0, 1}, {1, 0}}));
}

TEST(IdealExtension, GapSetFiniteness) {
  EXPECT_FALSE(gap_set_is_finite(gens({{1, 1}})));
  EXPECT_TRUE(gap_set_is_finite(gens({{2, 0}, {0, 2}, {1, 1}})));
  EXPECT_TRUE(gap_set_is_finite(gens({{3}})));
}

TEST(IdealExtension, GapAbsorption) {
  EXPECT_TRUE(is_gap_absorbing(gens({{1, 1}}), Box::cube(2, 6)).absorbing);
  EXPECT_TRUE(is_gap_absorbing(gens({{2, 2}}), Box::cube(2, 8)).absorbing);
  const auto diag = is_gap_absorbing(diagonal_monoid(), Box::cube(2, 6));
  ASSERT_FALSE(diag.absorbing);
  ASSERT_TRUE(diag.counterexample.has_value());
  const auto& w = *diag.counterexample;
  EXPECT_EQ(w.gap + w.atom, w.sum);
  EXPECT_FALSE(diagonal_monoid().contains(diagonal_monoid().make(w.gap)));
}

TEST(IdealExtension, Alpha) {
  EXPECT_EQ(cmonoid_alpha(gens({{1, 1}})), 1);
  EXPECT_EQ(cmonoid_alpha(gens({{2, 0}, {0, 3}, {1, 1}})), 3);
  EXPECT_EQ(cmonoid_alpha(gens({{5, 2}})), 5);
  EXPECT_FALSE(alpha_criterion_counterexample(gens({{2, 0}, {0, 3}, {1, 1}})).has_value());
}

TEST(IdealExtension, ClassSemigroup) {
  const auto c = class_semigroup(gens({{1, 1}}));
  EXPECT_EQ(c.class_count(), 4U);
  EXPECT_EQ(class_count_uncapped(gens({{1, 1}}), 3), 4U);
  // With H = N_0 every vector is equivalent to every other.
  EXPECT_EQ(class_semigroup(gens({{1}})).class_count(), 1U);
  const auto h = gens({{2, 2}});
  const auto capped = class_semigroup(h);
  EXPECT_EQ(capped.class_count(), class_count_uncapped(h, 3 * cmonoid_alpha(h)));
  EXPECT_EQ(class_semigroup(h, cmonoid_alpha(h) + 1).class_count(), capped.class_count());
}

TEST(IdealExtension, ClassTableIsCommutativeMonoid) {
  const auto c = class_semigroup(gens({{2, 0}, {0, 3}, {1, 1}}));
  const auto n = c.class_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(c.table[i][j], c.table[j][i]);
      for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(c.table[c.table[i][j]][k], c.table[i][c.table[j][k]]);
    }
  }
}

TEST(IdealExtension, UnitDecoration) {
  const IdealExtensionMonoid h(1, {ExponentVector{1}}, FiniteAbelianGroup({2}));
  const auto units = h.unit_group();
  EXPECT_TRUE(h.contains(MonoidElement{units.element({1}), ExponentVector{2}}));
  EXPECT_FALSE(h.contains(MonoidElement{units.element({1}), ExponentVector{0}}));
  EXPECT_TRUE(h.contains(h.identity()));
  // One atom per unit on (1).
  EXPECT_EQ(h.atoms_below(ExponentVector{3}).size(), 2U);
  EXPECT_THROW((void)class_semigroup(h), Error);
}

TEST(IdealExtension, FreeAndDiagonal) {
  const auto f = free_monoid(2);
  EXPECT_TRUE(f.is_atom(f.make({1, 0})));
  EXPECT_FALSE(f.is_atom(f.make({1, 1})));
  const auto d = diagonal_monoid();
  EXPECT_TRUE(d.contains(d.make({2, 2})));
  EXPECT_FALSE(d.contains(d.make({2, 1})));
  EXPECT_TRUE(d.is_atom(d.make({1, 1})));
}
