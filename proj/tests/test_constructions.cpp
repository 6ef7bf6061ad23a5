#include <gtest/gtest.h>

#include "condmon/constructions.hpp"
#include "condmon/errors.hpp"
#include "condmon/factor.hpp"
#include "oracles.hpp"

using namespace condmon;

namespace {

/// L(S) over F_iota(supp S) from the brute-force oracle.
std::vector<int> oracle_lengths(const GSequence& s) {
  std::vector<GroupElement> support;
  for (const auto& [g, k] : s.multiplicities()) support.push_back(g);
  const ZeroSumContext ctx(s.group(), support);
  const oracle::Member member = [&](const oracle::Vec& v) {
    std::vector<GroupElement> xs;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::int64_t k = 0; k < v[i]; ++k) xs.push_back(ctx.support()[i]);
    }
    return xs.empty() || !oracle::zero_sum_free(xs);
  };
  return oracle::lengths(oracle::factorizations(member, oracle::to_vec(ctx.to_vector(s))));
}

}  // namespace

TEST(Constructions, DeepHole) {
  EXPECT_EQ(deep_hole_monoid(2, 1).generators(), (std::vector<ExponentVector>{{1, 1}}));
  EXPECT_EQ(deep_hole_monoid(1, 1).generators(), (std::vector<ExponentVector>{{1}}));
  EXPECT_EQ(deep_hole_monoid(2, 2).generators(), (std::vector<ExponentVector>{{2, 2}}));
  EXPECT_THROW((void)deep_hole_monoid(0, 1), Error);
  EXPECT_THROW((void)deep_hole_monoid(2, 0), Error);
}

TEST(Constructions, DeepHoleCatenary) {
  const auto h = deep_hole_monoid(2, 1);
  const auto lattice = std::make_shared<const ElementLattice>(h, h.make({6, 6}));
  int worst = 0;
  for (std::size_t id = 0; id < lattice->size(); ++id) {
    if (!lattice->member(id)) continue;
    worst = std::max(worst, catenary(factorizations(lattice, id)));
  }
  EXPECT_EQ(worst, 3);
}

TEST(Constructions, DeepHoleIntervals) {
  const auto h = deep_hole_monoid(2, 2);
  const auto lattice = std::make_shared<const ElementLattice>(h, h.make({10, 10}));
  const auto lengths = lattice_length_sets(*lattice);
  for (std::size_t id = 0; id < lattice->size(); ++id) {
    if (lattice->member(id)) EXPECT_TRUE(lengths[id].is_interval()) << to_string(lattice->element(id).vec);
  }
}

TEST(Constructions, PowerPrimary) {
  const auto h = power_primary_monoid(ExponentVector{2, 2});
  EXPECT_EQ(h.generators(), (std::vector<ExponentVector>{{2, 2}}));
  const auto hu = power_primary_monoid(ExponentVector{1}, FiniteAbelianGroup({2}));
  EXPECT_TRUE(hu.has_unit_group());
  EXPECT_THROW((void)power_primary_monoid(ExponentVector{0, 1}), Error);
}

TEST(Constructions, CycleMonoid) {
  for (std::int64_t m = 3; m <= 5; ++m) {
    const auto h = cycle_monoid(m);
    EXPECT_EQ(h.dimension(), static_cast<std::size_t>(2 * m));
    EXPECT_EQ(h.generators().size(), static_cast<std::size_t>(2 * m));
    // The atoms of length two in F are exactly the generators.
    std::vector<ExponentVector> two;
    for (const auto& a : h.atoms_below(cycle_all_ones(m))) {
      if (length(a.vec) == 2) two.push_back(a.vec);
    }
    std::sort(two.begin(), two.end());
    auto g = h.generators();
    std::sort(g.begin(), g.end());
    EXPECT_EQ(two, g) << m;
  }
  EXPECT_THROW((void)cycle_monoid(1), Error);
}

TEST(Constructions, IntervalSequenceExamples) {
  const FiniteAbelianGroup c5({5});
  const auto a = interval_sequence(c5, 2, 5);
  EXPECT_EQ(a.recipe, IntervalRecipe::kAtomAndInverse);
  EXPECT_EQ(a.sequence, parse_sequence(c5, "-g^5 * g^5"));
  EXPECT_EQ(a.lengths, (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(oracle_lengths(a.sequence), a.lengths);

  const FiniteAbelianGroup c2({2});
  const auto b = interval_sequence(c2, 2, 3);
  EXPECT_EQ(b.sequence, parse_sequence(c2, "0^2 * g^2"));
  EXPECT_EQ(b.lengths, (std::vector<int>{2, 3}));

  const FiniteAbelianGroup k({2, 2});
  const auto c = interval_sequence(k, 3, 5);
  EXPECT_EQ(c.recipe, IntervalRecipe::kElementaryTwo);
  EXPECT_EQ(c.sequence, parse_sequence(k, "0^2 * e1^2 * e2^2 * (1,1)^2"));
  EXPECT_EQ(c.lengths.front(), 3);
  EXPECT_EQ(c.lengths.back(), 5);
  EXPECT_EQ(oracle_lengths(c.sequence), c.lengths);
}

TEST(Constructions, IntervalSequencesAgainstOracle) {
  for (const auto* name : {"C3", "C4", "C2xC2"}) {
    const auto g = parse_group(name);
    for (int kk = 2; kk <= 4; ++kk) {
      for (int l = kk + 1; l <= 5; ++l) {
        try {
          const auto s = interval_sequence(g, kk, l);
          EXPECT_EQ(oracle_lengths(s.sequence), s.lengths) << name << " " << kk << " " << l;
          EXPECT_EQ(s.lengths.front(), kk);
          EXPECT_EQ(s.lengths.back(), l);
          EXPECT_TRUE(LengthSet::from(s.lengths).is_interval());
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::kGroupTooSmall) << e.what();
        }
      }
    }
  }
}

TEST(Constructions, IntervalSequenceImpossible) {
  // Over C2 every atom of F_iota has length at most 3, and a sequence with
  // min L = 2 has at most 6 terms.
  try {
    (void)interval_sequence(FiniteAbelianGroup({2}), 2, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGroupTooSmall);
  }
  EXPECT_THROW((void)interval_sequence(FiniteAbelianGroup({5}), 3, 3), Error);
}

TEST(Constructions, EqualCatenaryBoundedExponent) {
  const auto inst = equal_catenary_instance(2, EqualCatenaryMode::kBoundedExponent, {2, 0});
  EXPECT_EQ(inst.context.group().to_string(), "C2xC2xC2xC2");
  EXPECT_EQ(inst.first.size(), 3U);
  EXPECT_EQ(inst.second.size(), 3U);
  const auto iota = iota_monoid(inst.context);
  const auto set = factorizations(iota, iota.make(inst.context.to_vector(inst.element)));
  const auto layer = set.layer(3);
  ASSERT_EQ(layer.size(), 2U);
  EXPECT_EQ(distance(set.factorizations()[layer[0]], set.factorizations()[layer[1]]), 3);
  EXPECT_GE(catenary_eq(set), 3);
}

TEST(Constructions, EqualCatenaryLargeOrder) {
  const auto inst = equal_catenary_instance(2, EqualCatenaryMode::kLargeOrder);
  const auto iota = iota_monoid(inst.context);
  const auto set = factorizations(iota, iota.make(inst.context.to_vector(inst.element)));
  EXPECT_EQ(set.layer(3).size(), 2U);
}

TEST(Constructions, EqualCatenaryBadParameters) {
  try {
    (void)equal_catenary_instance(1, EqualCatenaryMode::kBoundedExponent);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadParameters);
  }
}
