#include <random>

#include <gtest/gtest.h>

#include "condmon/errors.hpp"
#include "condmon/freemonoid.hpp"
#include "oracles.hpp"

using namespace condmon;

TEST(FreeMonoid, Divisibility) {
  EXPECT_TRUE(divides(ExponentVector{0, 0}, ExponentVector{3, 7}));
  EXPECT_FALSE(divides(ExponentVector{1, 2}, ExponentVector{2, 1}));
  EXPECT_TRUE(divides(ExponentVector{1, 1}, ExponentVector{3, 3}));
}

TEST(FreeMonoid, DivisibilityDimensionMismatch) {
  try {
    (void)divides(ExponentVector{1}, ExponentVector{1, 1});
    FAIL() << "expected DimensionMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
}

TEST(FreeMonoid, Length) {
  EXPECT_EQ(length(ExponentVector{0, 0, 0}), 0);
  EXPECT_EQ(length(ExponentVector{1, 2}), 3);
}

TEST(FreeMonoid, ArithmeticLaws) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int64_t> coord(0, 6);
  for (int i = 0; i < 300; ++i) {
    const ExponentVector a{coord(rng), coord(rng), coord(rng)};
    const ExponentVector b{coord(rng), coord(rng), coord(rng)};
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(checked_subtract(a + b, b), a);
    EXPECT_EQ(divides(a, b), checked_subtract(b, a).has_value());
    EXPECT_TRUE(divides(meet(a, b), a));
    EXPECT_TRUE(divides(b, join(a, b)));
    EXPECT_EQ(meet(a, b) + join(a, b), a + b);
  }
}

TEST(FreeMonoid, NegativeExponentRejected) {
  EXPECT_THROW(ExponentVector(std::vector<std::int64_t>{1, -1}), Error);
}

TEST(FreeMonoid, DicksonMinimal) {
  EXPECT_TRUE(dickson_min({}).empty());
  const std::vector<ExponentVector> points{{1, 2}, {2, 1}, {2, 2}};
  EXPECT_EQ(dickson_min(points), (std::vector<ExponentVector>{{1, 2}, {2, 1}}));
}

TEST(FreeMonoid, DicksonAgainstPairwiseScan) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::int64_t> coord(0, 4);
  for (int round = 0; round < 100; ++round) {
    std::vector<ExponentVector> points;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) points.push_back({coord(rng), coord(rng), coord(rng)});
    std::set<ExponentVector> expected;
    for (const auto& p : points) {
      bool dominated = false;
      for (const auto& q : points) dominated = dominated || (q != p && divides(q, p));
      if (!dominated) expected.insert(p);
    }
    const auto got = dickson_min(points);
    EXPECT_EQ(std::vector<ExponentVector>(expected.begin(), expected.end()), got);
    for (const auto& p : points) {
      EXPECT_TRUE(std::any_of(got.begin(), got.end(), [&](const auto& m) { return divides(m, p); }));
    }
  }
}

TEST(FreeMonoid, BoxEnumeration) {
  const Box box(ExponentVector{2, 1});
  EXPECT_EQ(box.cardinality(), 6U);
  const auto points = box_enumeration(box);
  ASSERT_EQ(points.size(), 6U);
  EXPECT_TRUE(std::is_sorted(points.begin(), points.end()));
  EXPECT_EQ(divisor_enumeration(ExponentVector{2, 1}), points);
  EXPECT_THROW((void)box_enumeration(Box::cube(3, 9), 100), Error);
}

TEST(FreeMonoid, BoxIndexRefinesDivisibility) {
  const ExponentVector upper{3, 2, 4};
  const BoxIndex index(upper, 1000);
  ASSERT_EQ(index.size(), 60U);
  const auto all = oracle::divisors(oracle::to_vec(upper));
  for (const auto& u : all) {
    const ExponentVector uv(u);
    EXPECT_EQ(index.vector_at(index.index(uv)), uv);
    for (const auto& v : all) {
      const ExponentVector vv(v);
      if (!divides(uv, vv)) continue;
      EXPECT_LE(index.index(uv), index.index(vv));
      EXPECT_EQ(index.index(*checked_subtract(vv, uv)), index.index(vv) - index.index(uv));
    }
  }
}

TEST(FreeMonoid, VectorLiterals) {
  EXPECT_EQ(parse_vector("(1, 2,3)"), (ExponentVector{1, 2, 3}));
  EXPECT_EQ(to_string(ExponentVector{4, 0}), "(4,0)");
  EXPECT_THROW((void)parse_vector("(1,"), Error);
  EXPECT_THROW((void)parse_vector("(1,-2)"), Error);
}
