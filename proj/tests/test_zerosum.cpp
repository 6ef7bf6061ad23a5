#include <random>

#include <gtest/gtest.h>

#include "condmon/errors.hpp"
#include "condmon/zerosum.hpp"
#include "oracles.hpp"

using namespace condmon;

namespace {

GSequence seq(const FiniteAbelianGroup& g, const char* text) { return parse_sequence(g, text); }

std::vector<std::string> texts(const std::vector<GSequence>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(to_string(x));
  std::sort(out.begin(), out.end());
  return out;
}

/// 1 + the longest zero-sum free multiset, by listing multisets of
/// increasing length until none is zero-sum free.
std::int64_t davenport_oracle(const FiniteAbelianGroup& g) {
  const auto elements = g.enumerate_elements();
  std::vector<std::vector<GroupElement>> frontier{{}};
  std::int64_t longest = 0;
  while (!frontier.empty()) {
    std::vector<std::vector<GroupElement>> next;
    for (const auto& s : frontier) {
      const std::size_t start = s.empty() ? 0 : g.index_of(s.back());
      for (std::size_t i = start; i < elements.size(); ++i) {
        auto t = s;
        t.push_back(elements[i]);
        if (oracle::zero_sum_free(t)) next.push_back(std::move(t));
      }
    }
    if (!next.empty()) longest = static_cast<std::int64_t>(next.front().size());
    frontier = std::move(next);
  }
  return longest + 1;
}

}  // namespace

TEST(ZeroSum, SigmaAndLiterals) {
  const FiniteAbelianGroup c5({5});
  EXPECT_TRUE(sigma(GSequence(c5)).is_zero());
  EXPECT_TRUE(sigma(seq(c5, "g * -g")).is_zero());
  EXPECT_EQ(sigma(seq(c5, "g^3")), c5.element({3}));
  EXPECT_EQ(seq(c5, "1").length(), 0);
  EXPECT_EQ(to_string(seq(c5, "(2) * 0^2 * g")), "0^2 * (1) * (2)");
  EXPECT_EQ(seq(c5, "0^2 * (1) * (2)"), seq(c5, "(2) * 0^2 * g"));
}

TEST(ZeroSum, ZeroSumFreeness) {
  const FiniteAbelianGroup c3({3});
  EXPECT_TRUE(is_zero_sum_free(seq(c3, "g^2")));
  EXPECT_FALSE(is_zero_sum_free(seq(c3, "0 * g")));
  const FiniteAbelianGroup k({2, 2});
  EXPECT_FALSE(is_zero_sum_free(seq(k, "e1 * e2 * (1,1)")));
}

TEST(ZeroSum, IotaMembership) {
  const FiniteAbelianGroup c3({3});
  EXPECT_TRUE(in_F_iota(GSequence(c3)));
  EXPECT_FALSE(in_F_iota(seq(c3, "g^2")));
  EXPECT_TRUE(in_F_iota(seq(c3, "g^3")));
}

TEST(ZeroSum, FreenessAgainstSubsetScan) {
  const FiniteAbelianGroup g({2, 4});
  const auto elements = g.enumerate_elements();
  std::mt19937 rng(9);
  for (int round = 0; round < 400; ++round) {
    std::vector<GroupElement> s;
    const int n = static_cast<int>(rng() % 9);
    for (int i = 0; i < n; ++i) s.push_back(elements[rng() % elements.size()]);
    const GSequence sequence(g, s);
    EXPECT_EQ(is_zero_sum_free(sequence), oracle::zero_sum_free(s)) << to_string(sequence);
    EXPECT_EQ(in_F_iota(sequence), s.empty() || !oracle::zero_sum_free(s));
  }
}

TEST(ZeroSum, MinimalZeroSumSequences) {
  const FiniteAbelianGroup c2({2});
  EXPECT_EQ(texts(minimal_zero_sum_sequences(ZeroSumContext::full(c2), 2)),
            (std::vector<std::string>{"(1)^2", "0"}));
  const FiniteAbelianGroup c3({3});
  const ZeroSumContext ctx(c3, {c3.element({1})});
  EXPECT_EQ(texts(minimal_zero_sum_sequences(ctx, 5)), (std::vector<std::string>{"(1)^3"}));
}

TEST(ZeroSum, Davenport) {
  EXPECT_EQ(davenport(ZeroSumContext::full(FiniteAbelianGroup())), 1);
  for (std::int64_t n = 1; n <= 8; ++n) {
    const FiniteAbelianGroup cn({n});
    const auto ctx = ZeroSumContext::full(cn);
    EXPECT_EQ(davenport(ctx), n);
    EXPECT_EQ(davenport_by_enumeration(ctx), n);
    EXPECT_EQ(davenport_oracle(cn), n);
  }
  const FiniteAbelianGroup k({2, 2});
  EXPECT_EQ(davenport(ZeroSumContext::full(k)), 3);
  EXPECT_EQ(davenport_oracle(k), 3);
  EXPECT_EQ(max_zero_sum_free_length(ZeroSumContext::full(k)), 2);
}

TEST(ZeroSum, AtomsDividing) {
  const FiniteAbelianGroup c2({2});
  const auto ctx = ZeroSumContext::full(c2);
  EXPECT_EQ(texts(atoms_of_F_iota(ctx, seq(c2, "0^2 * g^2"))),
            (std::vector<std::string>{"(1)^2", "0", "0 * (1)"}));
  EXPECT_THROW((void)atoms_of_F_iota(ctx, seq(c2, "g")), Error);
}

TEST(ZeroSum, GlobalAtoms) {
  const FiniteAbelianGroup c2({2});
  // g^3 = g^2 * g with g outside F_iota, so it is an atom as well.
  EXPECT_EQ(texts(global_atoms_F_iota(ZeroSumContext::full(c2))),
            (std::vector<std::string>{"(1)^2", "(1)^3", "0", "0 * (1)"}));
  const FiniteAbelianGroup c3({3});
  EXPECT_EQ(texts(global_atoms_F_iota(ZeroSumContext(c3, {c3.element({1})}))),
            (std::vector<std::string>{"(1)^3", "(1)^4", "(1)^5"}));
  EXPECT_EQ(texts(global_atoms_F_iota(ZeroSumContext::full(FiniteAbelianGroup()))),
            (std::vector<std::string>{"0"}));
}

TEST(ZeroSum, GlobalAtomsAgainstSplitOracle) {
  // Atoms of F_iota(C4) up to the bound, decided by trying every split.
  const FiniteAbelianGroup c4({4});
  const auto ctx = ZeroSumContext::full(c4);
  const auto atoms = global_atoms_F_iota(ctx);
  const auto bound = iota_atom_length_bound(ctx);
  EXPECT_EQ(bound, 4 + 3);
  const oracle::Member member = [&](const oracle::Vec& v) {
    std::vector<GroupElement> s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::int64_t k = 0; k < v[i]; ++k) s.push_back(ctx.support()[i]);
    }
    return s.empty() || !oracle::zero_sum_free(s);
  };
  std::set<std::string> expected;
  for (const auto& v : oracle::divisors(oracle::Vec(4, bound))) {
    std::int64_t len = 0;
    for (auto x : v) len += x;
    if (len <= bound && oracle::is_atom(member, v)) expected.insert(to_string(ctx.to_sequence(ExponentVector(v))));
  }
  const auto got = texts(atoms);
  EXPECT_EQ(std::vector<std::string>(expected.begin(), expected.end()), got);
}

TEST(ZeroSum, ContextVectors) {
  const FiniteAbelianGroup c3({3});
  const ZeroSumContext ctx(c3, {c3.element({2}), c3.element({1}), c3.element({1})});
  EXPECT_EQ(ctx.support().size(), 2U);
  const auto s = seq(c3, "g^2 * (2)");
  EXPECT_EQ(ctx.to_sequence(ctx.to_vector(s)), s);
  EXPECT_THROW((void)ctx.to_vector(seq(c3, "0")), Error);
  EXPECT_THROW(ZeroSumContext(c3, {}), Error);
}

TEST(ZeroSum, LabeledPrimes) {
  const FiniteAbelianGroup c3({3});
  const LabeledPrimes lp(c3, {{"p", c3.element({1})}, {"q", c3.element({2})}});
  EXPECT_EQ(beta_tilde(lp, parse_prime_product(lp, "1")).length(), 0);
  EXPECT_EQ(beta_tilde(lp, parse_prime_product(lp, "p * q")), seq(c3, "g * -g"));
  EXPECT_TRUE(in_F_phi(lp, parse_prime_product(lp, "1")));
  EXPECT_FALSE(in_F_phi(lp, parse_prime_product(lp, "p")));
  EXPECT_TRUE(in_F_phi(lp, parse_prime_product(lp, "p * q")));
  EXPECT_EQ(format_prime_product(lp, parse_prime_product(lp, "q * p^2")), "p^2 * q");
  try {
    (void)parse_prime_product(lp, "r");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownPrime);
  }
}

TEST(ZeroSum, TransferChecks) {
  const FiniteAbelianGroup c2({2});
  const LabeledPrimes two(c2, {{"p", c2.zero()}, {"q", c2.element({1})}});
  EXPECT_TRUE(transfer_check(two, 6).passed);
  const FiniteAbelianGroup c3({3});
  const LabeledPrimes three(c3, {{"p1", c3.element({1})}, {"p2", c3.element({1})}, {"q", c3.element({2})}});
  const auto report = transfer_check(three, 6);
  EXPECT_TRUE(report.passed);
  EXPECT_GT(report.splits_checked, 0U);
}

TEST(ZeroSum, TransferFailsWithoutSurjectivity) {
  const FiniteAbelianGroup c3({3});
  const LabeledPrimes lp(c3, {{"p", c3.element({1})}}, std::vector<GroupElement>{c3.element({1}), c3.element({2})});
  const auto report = transfer_check(lp, 4);
  EXPECT_FALSE(report.passed);
  EXPECT_FALSE(report.surjective);
  EXPECT_FALSE(report.witness.empty());
}

TEST(ZeroSum, FibreCatenary) {
  const FiniteAbelianGroup c2({2});
  const LabeledPrimes lp(c2, {{"p1", c2.element({1})}, {"p2", c2.element({1})}, {"q", c2.zero()}});
  EXPECT_LE(fiber_catenary_check(lp, parse_prime_product(lp, "p1 * p2 * q^2")), 2);
  EXPECT_LE(fiber_catenary_check(lp, parse_prime_product(lp, "p1^3 * p2^3 * q^2")), 2);
  EXPECT_EQ(fiber_catenary_check(lp, parse_prime_product(lp, "q")), 0);
  const FiniteAbelianGroup c3({3});
  const LabeledPrimes single(c3, {{"p", c3.element({1})}, {"q", c3.element({2})}});
  EXPECT_EQ(fiber_catenary_check(single, parse_prime_product(single, "p^2 * q^2")), 0);
}
