#include "trinv/families.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace trinv;

namespace {

struct Brute {
  int delta = 0;
  std::uint64_t mu = 0;
};

// Direct minimum of the Gromov-product sum over every nu in S_k.
Brute bruteForceCompatibility(const ColoredGraph& G) {
  std::vector<int> im(G.k());
  std::iota(im.begin(), im.end(), 0);
  Brute b{1 << 30, 0};
  do {
    int d = evaluateNu(G, Permutation(im)).deltaNu;
    if (d < b.delta) b = {d, 1};
    else if (d == b.delta) ++b.mu;
  } while (std::next_permutation(im.begin(), im.end()));
  return b;
}

}  // namespace

TEST(Compatibility, BranchAndBoundMatchesBruteForce) {
  std::mt19937_64 rng(21);
  SearchBudget pruned;
  pruned.exhaustiveMaxK = 0;
  for (int t = 0; t < 60; ++t) {
    const int D = 3 + t % 2, k = 2 + t % 5;
    auto G = randomGraph(D, k, rng);
    auto expect = bruteForceCompatibility(G);
    auto got = compatibilitySearch(G, pruned);
    ASSERT_EQ(got.exactness, Exactness::Exact);
    EXPECT_EQ(got.delta, expect.delta) << G.toString();
    EXPECT_EQ(got.mu, expect.mu) << G.toString();
    auto full = compatibilitySearch(G);
    EXPECT_TRUE(full.exhaustive);
    EXPECT_EQ(full.mu, expect.mu);
  }
}

TEST(Compatibility, KnownValues) {
  auto pt = compatibilitySearch(partialTranspose(3, 3, {1}, {2}));
  EXPECT_EQ(pt.delta, 0);
  auto k4 = compatibilitySearch(completeGraph(4));
  EXPECT_EQ(k4.delta, 1);
  EXPECT_EQ(k4.mu, 4u);
  EXPECT_EQ(compatibilitySearch(multiEntropy(2, 3)).delta, 1);
  EXPECT_EQ(compatibilitySearch(multiEntropy(3, 3)).delta, 3);
}

TEST(Compatibility, TinyNodeBudgetGivesBound) {
  SearchBudget tiny;
  tiny.exhaustiveMaxK = 0;
  tiny.nodeLimit = 3;
  auto r = compatibilitySearch(multiEntropy(3, 3), tiny);
  EXPECT_EQ(r.exactness, Exactness::Bound);
  EXPECT_GE(r.delta, 3);
}

TEST(Degrees, GenusIsANonNegativeInteger) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 50; ++t) {
    auto G = randomConnectedGraph(4, 1 + t % 6, rng);
    for (const auto& order : jacketOrders(4)) EXPECT_GE(jacketGenus(G, order), 0);
    auto rep = degreeReport(G);
    std::int64_t sum = 0;
    for (const auto& [order, g] : rep.genus) sum += g;
    EXPECT_EQ(rep.gurauDegree, sum);
  }
}

TEST(Degrees, MelonicGraphsHaveZeroDegree) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    auto G = randomMelonic(4, 1 + t % 7, rng);
    auto rep = degreeReport(G);
    for (const auto& [p, w] : rep.omegaP) EXPECT_EQ(w, 0) << "p = " << p;
  }
}

TEST(Degrees, CompleteGraphValues) {
  auto K = completeGraph(4);
  EXPECT_EQ(jacketGenus(K, {1, 2, 3, 4}), 3);
  EXPECT_EQ(omegaP(K, 2), 7);
  EXPECT_EQ(omegaP(K, 3), 3);
  EXPECT_EQ(omegaPQ(K, 2, 3), 8);
}

TEST(Compose, ThresholdsByOperation) {
  auto G = melon(3);
  CompatibilityValue zero{0, 1, Exactness::Exact}, one{1, 2, Exactness::Exact};
  ComposeContext ctx;
  ctx.op = ComposeOp::Flip;
  auto r = composeDelta(G, zero, G, zero, ctx);
  EXPECT_TRUE(r.known);
  EXPECT_EQ(r.mu, 1u);
  r = composeDelta(G, one, G, zero, ctx);  // 1 >= (D-1)(D-2)/2 = 1
  EXPECT_FALSE(r.known);
  ctx.declaredAssumption = "test";
  r = composeDelta(G, one, G, one, ctx);
  EXPECT_TRUE(r.assumed);
  EXPECT_EQ(r.delta, 2);
  EXPECT_EQ(r.mu, 4u);
  ctx = {};
  ctx.op = ComposeOp::Union;
  EXPECT_TRUE(composeDelta(G, one, G, one, ctx).known);  // 2 < 3
}

TEST(Degrees, ThresholdHelpers) {
  EXPECT_EQ(kMin(2), 2);
  EXPECT_EQ(kMin(3), 3);
  EXPECT_EQ(kMin(7), 4);
  EXPECT_GE(kMaxBound({2, 2}), 2);
}
