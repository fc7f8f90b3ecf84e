#include "trinv/oracle.hpp"
#include "trinv/suites.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trinv;

namespace {

WeightFunction randomWeights(int D, std::mt19937_64& rng, int maxWeight = 3) {
  WeightFunction a(D);
  std::uniform_int_distribution<int> w(1, maxWeight);
  for (const auto& B : multiColorSubsets(D))
    if (rng() % 2) a.set(B, w(rng));
  return a;
}

}  // namespace

// The closed form for reference states against explicit tensor contraction.
TEST(ReferenceStates, ClosedFormMatchesDenseContraction) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    auto alpha = randomWeights(3, rng);
    auto G = randomGraph(3, 1 + static_cast<int>(rng() % 3), rng);
    const double closed = static_cast<double>(evaluateOnReference(G, alpha).value());
    const auto dense = contract(G, buildReference(alpha));
    EXPECT_NEAR(dense.real(), closed, 1e-10 * closed) << alpha.toString() << " " << G.toString();
    EXPECT_NEAR(dense.imag(), 0.0, 1e-12);
  }
}

TEST(ReferenceStates, WeightFunctionRejectsBadEntries) {
  WeightFunction a(3);
  EXPECT_THROW(a.set({1}, 2), InvalidArgument);
  EXPECT_THROW(a.set({1, 4}, 2), InvalidArgument);
  EXPECT_THROW(a.set({1, 2}, 0), InvalidArgument);
  a.set({2, 1}, 5);
  EXPECT_EQ(a.at({1, 2}), 5);
  a.set({1, 2}, 1);
  EXPECT_TRUE(a.isSeparable());
}

TEST(ReferenceStates, ReconstructionRoundTrip) {
  std::mt19937_64 rng(32);
  for (int D : {2, 3, 4}) {
    for (int t = 0; t < (D == 4 ? 2 : 10); ++t) {
      auto alpha = randomWeights(D, rng, 4);
      TraceOracle oracle = [&](const ColoredGraph& G) { return evaluateOnReference(G, alpha).value(); };
      EXPECT_EQ(reconstructAlpha(D, oracle), alpha) << alpha.toString();
    }
  }
}

TEST(ReferenceStates, ReconstructionRejectsNonReferenceValues) {
  TraceOracle bogus = [](const ColoredGraph& G) { return Rational(1, G.k() + 1); };
  EXPECT_THROW(reconstructAlpha(3, bogus), InvalidArgument);
}

TEST(ReferenceStates, LocalOperationOrderIsDivisibility) {
  WeightFunction beta(3, {{{1, 2}, 6}, {{1, 2, 3}, 4}});
  WeightFunction alpha(3, {{{1, 2}, 3}, {{1, 2, 3}, 2}});
  EXPECT_TRUE(loLessEqual(beta, alpha));
  EXPECT_FALSE(loLessEqual(alpha, beta));
  alpha.set({1, 2}, 4);
  EXPECT_FALSE(loLessEqual(beta, alpha));
}

TEST(ReferenceStates, FlowReachesButPointwiseDoesNot) {
  auto [beta, alpha] = fixtures::flowExample();
  EXPECT_FALSE(loccPointwiseLE(beta, alpha));
  EXPECT_FALSE(loccPointwiseLE(alpha, beta));
  auto flow = loccFlowOrder(beta, alpha);
  ASSERT_TRUE(flow.has_value());
  EXPECT_EQ(loccReachableSufficient(beta, alpha).verdict, LoccVerdict::Established);
}

TEST(ReferenceStates, CanonicalizationMergesCopies) {
  WeightedPartition pi;
  pi.D = 3;
  pi.blocks.push_back({{{1, 1}, {2, 1}}, 2});
  pi.blocks.push_back({{{1, 2}, {2, 2}}, 3});
  pi.blocks.push_back({{{3, 1}}, 7});
  pi.blocks.push_back({{{3, 2}, {3, 3}}, 5});
  auto alpha = canonicalize(pi);
  EXPECT_EQ(alpha.at({1, 2}), 6);
  EXPECT_EQ(alpha.at({1, 3}), 1);
  EXPECT_EQ(separabilityStructure(alpha).components.size(), 2u);
}

TEST(ReferenceStates, NamedStateWeights) {
  EXPECT_EQ(NamedState::ghz(3).weights(5).at({1, 2, 3}), 5);
  EXPECT_EQ(NamedState::star(3, 1).weights(2).at({1, 3}), 2);
  EXPECT_EQ(NamedState::ghzFraction(3, 2).weights(9).at({1, 2, 3}), 3);
  EXPECT_THROW(NamedState::ghzFraction(3, 2).weights(8), InvalidArgument);
}
