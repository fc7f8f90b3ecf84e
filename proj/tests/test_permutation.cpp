#include "trinv/permutation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using trinv::Permutation;

namespace {

Permutation randomPerm(int k, std::mt19937_64& rng) {
  std::vector<int> im(k);
  std::iota(im.begin(), im.end(), 0);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(im);
}

// Oracle: minimal number of transpositions turning p into q, by breadth-first search.
int bfsTranspositionDistance(const Permutation& p, const Permutation& q) {
  const int k = p.degree();
  std::vector<std::vector<int>> frontier{p.images()};
  std::vector<std::vector<int>> seen{p.images()};
  for (int d = 0;; ++d) {
    std::vector<std::vector<int>> next;
    for (const auto& cur : frontier) {
      if (cur == q.images()) return d;
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
          auto n = cur;
          std::swap(n[a], n[b]);
          if (std::find(seen.begin(), seen.end(), n) == seen.end()) {
            seen.push_back(n);
            next.push_back(n);
          }
        }
    }
    frontier = std::move(next);
  }
}

}  // namespace

TEST(Permutation, ParsesCycleNotationWithFixedPointsOmitted) {
  auto p = Permutation::parseCycles(9, "(1 2 3 4 5 6 7)(8 9)");
  EXPECT_EQ(p.oneBased(), (std::vector<int>{2, 3, 4, 5, 6, 7, 1, 9, 8}));
  EXPECT_EQ(p.toCycleString(), "(1 2 3 4 5 6 7)(8 9)");
  EXPECT_TRUE(Permutation::parseCycles(4, "id").isIdentity());
  EXPECT_EQ(Permutation::parseCycles(5, "(2 4)").cycleCount(), 4);
}

TEST(Permutation, RejectsRepeatedPoints) {
  EXPECT_THROW(Permutation::parseCycles(9, "(1 9 5)(2 5)"), trinv::InvalidArgument);
  EXPECT_THROW(Permutation::fromOneBased({1, 1, 2}), trinv::InvalidArgument);
  EXPECT_THROW(Permutation::parseCycles(3, "(1 4)"), trinv::InvalidArgument);
}

TEST(Permutation, CompositionIsFunctional) {
  auto p = Permutation::parseCycles(3, "(1 2)");
  auto q = Permutation::parseCycles(3, "(2 3)");
  auto pq = p * q;
  for (int x = 0; x < 3; ++x) EXPECT_EQ(pq(x), p(q(x)));
  EXPECT_TRUE((p * p.inverse()).isIdentity());
}

TEST(Permutation, CayleyDistanceMatchesBreadthFirstSearch) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const int k = 1 + static_cast<int>(rng() % 5);
    auto p = randomPerm(k, rng), q = randomPerm(k, rng);
    EXPECT_EQ(trinv::cayleyDistance(p, q), bfsTranspositionDistance(p, q));
  }
}

TEST(Permutation, DistanceIsAMetric) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + static_cast<int>(rng() % 8);
    auto a = randomPerm(k, rng), b = randomPerm(k, rng), c = randomPerm(k, rng);
    EXPECT_EQ(trinv::cayleyDistance(a, b), trinv::cayleyDistance(b, a));
    EXPECT_LE(trinv::cayleyDistance(a, c), trinv::cayleyDistance(a, b) + trinv::cayleyDistance(b, c));
    EXPECT_EQ(trinv::cayleyDistance(a, a), 0);
  }
}

TEST(Permutation, PowerAndCycleType) {
  auto tau = Permutation::longCycle(6);
  EXPECT_TRUE(trinv::power(tau, 6).isIdentity());
  EXPECT_EQ(trinv::power(tau, 2).cycleType(), (std::vector<int>{3, 3}));
  EXPECT_EQ(trinv::power(tau, -1), tau.inverse());
}
