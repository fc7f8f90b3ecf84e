#include "trinv/suites.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trinv;

TEST(Families, IdentitySuiteHolds) {
  for (const auto& c : identitySuite()) EXPECT_TRUE(c.pass) << c.name;
}

TEST(Families, SpecTextRoundTrips) {
  for (const char* text : {"PT D=3 k=5 fwd=1 bwd=2", "RM D=4 k=6 first=2 second=4", "JRM D=3 seq=1,2,3,2,1,2",
                           "ME n=3 D=4", "CompleteGraph D=4", "Cyclic D=4 k=2 B=2,4", "Melon D=5"}) {
    auto spec = parseSpec(text);
    auto again = parseSpec(formatSpec(spec));
    EXPECT_EQ(generate(spec), generate(again)) << text;
  }
  EXPECT_THROW(parseSpec("Pretzel D=3"), InvalidArgument);
}

TEST(Families, SizesOfGeneratedGraphs) {
  EXPECT_EQ(multiEntropy(2, 3).k(), 4);
  EXPECT_EQ(multiEntropy(3, 3).k(), 9);
  EXPECT_EQ(multiEntropy(2, 4).k(), 8);
  EXPECT_EQ(realignment(3, 6, {1}, {2}).k(), 6);
  EXPECT_EQ(completeGraph(4).k(), 4);
  EXPECT_THROW(realignment(3, 5, {1}, {2}), InvalidArgument);
}

TEST(Families, MaximallySingleTraceMatchesDefinition) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    auto G = randomGraph(3, 1 + t % 5, rng);
    bool single = kappa(G) == 1;
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j) single = single && faces(G).at(i, j) == 1;
    EXPECT_EQ(isMaximallySingleTrace(G), single);
  }
}

TEST(Families, TreeCompositionOfNineVertexChain) {
  auto tree = treeCompose(parseTreeScript(fixtures::kNineVertexFlipChain));
  EXPECT_EQ(tree.graph.k(), 9);
  EXPECT_EQ(tree.trail.size(), 3u);
  auto F = faces(tree.graph);
  EXPECT_EQ(F.at(1, 2), 2);
  EXPECT_EQ(F.at(1, 3), 3);
  EXPECT_EQ(F.at(2, 3), 4);
}

TEST(Families, TrackingAgreesWithDirectSearchOnSmallTrees) {
  auto tree = treeCompose(parseTreeScript("root PT D=3 k=3 fwd=1 bwd=2\nflip 2 2 1 Melon D=3\nunion RM D=3 k=2\n"));
  auto tracked = trackCompatibility(tree);
  auto direct = compatibilitySearch(tree.graph);
  ASSERT_TRUE(tracked.known);
  EXPECT_EQ(tracked.value.delta, direct.delta);
  EXPECT_EQ(tracked.value.mu, direct.mu);
  EXPECT_EQ(tracked.witness.deltaNu, direct.delta);
}

TEST(Families, ThirdColorSearchOnSmallDegree) {
  ThirdColorQuery q;
  q.first = Permutation::identity(4);
  q.second = Permutation::longCycle(4);
  auto report = searchThirdColor(q);
  EXPECT_EQ(report.enumerated, 24u);
  std::uint64_t total = 0;
  for (const auto& c : report.classes) {
    total += c.count;
    auto G = ColoredGraph({q.first, q.second, c.example});
    auto r = compatibilitySearch(G);
    EXPECT_EQ(r.delta, c.delta);
    EXPECT_EQ(r.mu, c.mu);
  }
  EXPECT_EQ(total, report.admitted);
}

TEST(Families, RepairedThirdColorFixture) {
  auto q = fixtures::thirdColorQuery();
  ColoredGraph G({q.first, q.second, fixtures::repairedThirdColor()});
  auto F = faces(G);
  EXPECT_EQ(F.at(1, 3), 4);
  EXPECT_EQ(F.at(2, 3), 3);
  SearchBudget b;
  b.exhaustiveMaxK = 9;
  auto r = compatibilitySearch(G, b);
  EXPECT_EQ(r.delta, 2);
  EXPECT_EQ(r.mu, 21u);
}

TEST(Families, SymmetrizedGraphIsColorInvariant) {
  auto S = symmetrize(partialTranspose(3, 3, {1}, {2}));
  EXPECT_EQ(S.k(), 18);
  EXPECT_TRUE(isIsomorphic(S, permuteColors(S, {2, 3, 1})));
}
