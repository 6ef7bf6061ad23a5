#include <random>

#include <gtest/gtest.h>

#include "condmon/errors.hpp"
#include "condmon/group.hpp"

using namespace condmon;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kVerificationFailed;
}

}  // namespace

TEST(Group, CyclicAddition) {
  const FiniteAbelianGroup c4({4});
  EXPECT_EQ(c4.element({3}) + c4.element({2}), c4.element({1}));
}

TEST(Group, DirectSumAddition) {
  const FiniteAbelianGroup k({2, 2});
  EXPECT_EQ(k.element({1, 0}) + k.element({0, 1}), k.element({1, 1}));
}

TEST(Group, InverseLaw) {
  const FiniteAbelianGroup g({6, 15});
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto a = g.element({static_cast<std::int64_t>(rng() % 6), static_cast<std::int64_t>(rng() % 15)});
    EXPECT_TRUE((a + neg(a)).is_zero());
    EXPECT_EQ(a - a, g.zero());
  }
}

TEST(Group, ResiduesAreReduced) {
  const FiniteAbelianGroup c5({5});
  EXPECT_EQ(c5.element({-1}), c5.element({4}));
  EXPECT_EQ(c5.element({12}), c5.element({2}));
}

TEST(Group, Orders) {
  const FiniteAbelianGroup c6({6});
  EXPECT_EQ(order_of(c6.zero()), 1);
  EXPECT_EQ(order_of(c6.element({2})), 3);
  const FiniteAbelianGroup g({2, 4});
  const auto a = g.element({1, 1});
  // Repeated addition until zero.
  std::int64_t k = 1;
  for (auto x = a; !x.is_zero(); x = x + a) ++k;
  EXPECT_EQ(order_of(a), k);
  EXPECT_EQ(k, 4);
}

TEST(Group, CardinalityAndExponent) {
  const FiniteAbelianGroup g({2, 4, 6});
  EXPECT_EQ(g.cardinality(), 48U);
  EXPECT_EQ(g.exponent(), 12);
  EXPECT_TRUE(FiniteAbelianGroup().is_trivial());
  EXPECT_EQ(FiniteAbelianGroup().cardinality(), 1U);
}

TEST(Group, IndexRoundTrip) {
  const FiniteAbelianGroup g({3, 4});
  const auto all = g.enumerate_elements();
  ASSERT_EQ(all.size(), 12U);
  for (std::uint64_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(g.index_of(all[i]), i);
    EXPECT_EQ(g.element_at(i), all[i]);
  }
  EXPECT_EQ(kind_of([&] { (void)g.enumerate_elements(5); }), ErrorKind::kWindowTooLarge);
}

TEST(Group, IndependentStandardGenerators) {
  const FiniteAbelianGroup g({2, 2, 2});
  const auto e = independent_elements(g, 2, 2);
  ASSERT_EQ(e.size(), 2U);
  EXPECT_NE(e[0], e[1]);
  EXPECT_EQ(e[0], g.generator(0));
  EXPECT_EQ(e[1], g.generator(1));
}

TEST(Group, IndependentElementsInLargerSummands) {
  const FiniteAbelianGroup g({4, 4});
  const auto e = independent_elements(g, 2, 2);
  ASSERT_EQ(e.size(), 2U);
  EXPECT_EQ(e[0], scalar_mul(2, g.generator(0)));
  EXPECT_EQ(e[1], scalar_mul(2, g.generator(1)));
  // Independence: a e0 + b e1 = 0 only for a, b divisible by the order.
  for (std::int64_t a = 0; a < 2; ++a) {
    for (std::int64_t b = 0; b < 2; ++b) {
      const bool zero = (scalar_mul(a, e[0]) + scalar_mul(b, e[1])).is_zero();
      EXPECT_EQ(zero, a == 0 && b == 0);
    }
  }
}

TEST(Group, InsufficientRank) {
  const FiniteAbelianGroup c3({3});
  EXPECT_EQ(kind_of([&] { (void)independent_elements(c3, 2, 3); }), ErrorKind::kInsufficientRank);
}

TEST(Group, MismatchedGroups) {
  const FiniteAbelianGroup a({2});
  const FiniteAbelianGroup b({3});
  EXPECT_EQ(kind_of([&] { (void)(a.zero() + b.zero()); }), ErrorKind::kGroupMismatch);
}

TEST(Group, Parsing) {
  const auto g = parse_group("c2xC2xc4");
  EXPECT_EQ(g.to_string(), "C2xC2xC4");
  EXPECT_EQ(parse_group_element(g, "(1,0,3)"), g.element({1, 0, 3}));
  EXPECT_EQ(to_string(g.element({1, 0, 3})), "(1,0,3)");
  const auto c5 = parse_group("C5");
  EXPECT_EQ(parse_group_element(c5, "3"), c5.element({3}));
  EXPECT_EQ(kind_of([] { (void)parse_group("C2xZ"); }), ErrorKind::kParse);
  EXPECT_EQ(kind_of([] { (void)parse_group("C0"); }), ErrorKind::kParse);
  EXPECT_EQ(kind_of([&] { (void)parse_group_element(g, "(1,0)"); }), ErrorKind::kDimensionMismatch);
}
