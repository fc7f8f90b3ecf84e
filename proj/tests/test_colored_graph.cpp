#include "trinv/families.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace trinv;

namespace {

// Flood fill over the bipartite edge list, independent of the union-find used by the library.
int componentsByFloodFill(const ColoredGraph& G, const ColorSet& colors) {
  const int k = G.k();
  std::vector<int> seen(2 * k, 0);
  int count = 0;
  for (int start = 0; start < k; ++start) {
    if (seen[start]) continue;
    ++count;
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int c : colors) {
        int u = v < k ? k + G.sigma(c)(v) : G.sigma(c).inverse()(v - k);
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return count;
}

}  // namespace

TEST(ColoredGraph, RestrictedComponentsMatchFloodFill) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto G = randomGraph(3 + t % 2, 1 + static_cast<int>(rng() % 7), rng);
    for (const auto& B : multiColorSubsets(G.D())) EXPECT_EQ(kappaRestrict(G, B), componentsByFloodFill(G, B));
  }
}

TEST(ColoredGraph, FacesAreRelativeCycleCounts) {
  auto G = realignment(3, 4, {1}, {2});
  auto F = faces(G);
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      EXPECT_EQ(F.F[i][j], kappaRestrict(G, {i, j}));
      EXPECT_EQ(F.F[i][j], F.F[j][i]);
    }
}

TEST(ColoredGraph, RejectsMismatchedDegrees) {
  EXPECT_THROW(ColoredGraph({Permutation::identity(2), Permutation::identity(3)}), InvalidArgument);
}

TEST(ColoredGraph, IsomorphismIgnoresVertexLabels) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    auto G = randomGraph(3, 5, rng);
    auto H = relabel(G, randomPermutation(5, rng), randomPermutation(5, rng));
    EXPECT_TRUE(isIsomorphic(G, H));
    EXPECT_EQ(canonicalForm(G), canonicalForm(H));
  }
  EXPECT_FALSE(isIsomorphic(cycleGraph(3), ColoredGraph::trivial(2, 3)));
}

TEST(ColoredGraph, UnionFlipAndContractionSizes) {
  auto a = partialTranspose(3, 3, {1}, {2});
  auto b = realignment(3, 4, {1}, {2});
  EXPECT_EQ(disjointUnion(a, b).k(), 7);
  EXPECT_EQ(kappa(disjointUnion(a, b)), 2);
  auto f = flip(a, {1, 0}, b, {1, 0});
  EXPECT_EQ(f.k(), 7);
  EXPECT_EQ(kappa(f), 1);
  auto v = vertexContract(a, {Shade::White, 0}, b, {Shade::Black, 0});
  EXPECT_EQ(v.k(), 6);
}

TEST(ColoredGraph, DipoleReductionRecognizesMelonicGraphs) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    auto G = randomMelonic(3 + t % 3, 1 + t % 6, rng);
    EXPECT_TRUE(isMelonic(G));
    EXPECT_TRUE(classify(G).melonic);
  }
  EXPECT_FALSE(isMelonic(completeGraph(4)));
}

TEST(ColoredGraph, CoarseGrainingCopiesColors) {
  auto coarse = cycleGraph(3);
  ColorPartition zeta{{1, 3}, {2}};
  auto fine = coarseGrainGraph(coarse, zeta);
  EXPECT_EQ(fine.D(), 3);
  EXPECT_EQ(fine.sigma(1), fine.sigma(3));
  EXPECT_TRUE(membershipInPartitionClass(fine, zeta));
  EXPECT_THROW(validatePartition({{1}, {1, 2}}, 2), InvalidArgument);
}

TEST(ColoredGraph, ClassificationOfSmallFamilies) {
  auto c = classify(cycleGraph(4));
  EXPECT_TRUE(c.cyclic);
  EXPECT_FALSE(c.trivial);
  EXPECT_TRUE(classify(ColoredGraph::trivial(3, 2)).trivial);
  EXPECT_TRUE(classify(completeGraph(4)).genuinelyDPartite);
}
