#include "trinv/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace trinv;

TEST(DenseOracle, GhzMatchesComponentLaw) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    const int N = 2 + t % 2;
    auto G = randomConnectedGraph(3, 1 + static_cast<int>(rng() % 4), rng);
    auto ghz = buildGHZ({1, 2, 3}, N, {N, N, N});
    const double expected = std::pow(static_cast<double>(N), 1 - G.k());
    EXPECT_NEAR(contract(G, ghz).real(), expected, 1e-12);
  }
}

TEST(DenseOracle, StatesAreNormalized) {
  EXPECT_NEAR(buildPsiEx().norm2(), 1.0, 1e-12);
  EXPECT_NEAR(sampleHaar(3, 3, 5).norm2(), 1.0, 1e-12);
  WeightFunction a(3, {{{1, 2}, 2}, {{2, 3}, 3}});
  auto s = buildReference(a);
  EXPECT_EQ(s.dims, (std::vector<int>{2, 6, 3}));
  EXPECT_NEAR(s.norm2(), 1.0, 1e-12);
}

TEST(DenseOracle, HaarSamplesAreReproducible) {
  auto a = sampleHaar(3, 2, 99), b = sampleHaar(3, 2, 99), c = sampleHaar(3, 2, 100);
  EXPECT_EQ(a.amplitudes, b.amplitudes);
  EXPECT_NE(a.amplitudes, c.amplitudes);
}

TEST(DenseOracle, PowerSumsOfMaximallyEntangledPair) {
  auto ghz = buildGHZ({1, 2}, 3, {3, 3});
  auto p = powerSums(ghz, {1}, 4);
  for (int m = 1; m <= 4; ++m) EXPECT_NEAR(p[m - 1], std::pow(3.0, 1 - m), 1e-12);
}

TEST(DenseOracle, PowerSumsMatchEigenvalues) {
  // Purity from the reduced density matrix, built directly.
  auto psi = sampleHaar(2, 3, 17);
  Eigen::MatrixXcd M(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = psi.amplitudes[i * 3 + j];
  Eigen::MatrixXcd rho = M * M.adjoint();
  auto p = powerSums(psi, {1}, 2);
  EXPECT_NEAR(p[1], (rho * rho).trace().real(), 1e-12);
}

TEST(DenseOracle, SeparabilityDetection) {
  auto K = completeGraph(3 + 1);
  DenseState product{{2, 2, 2, 2}, std::vector<Complex>(16, 0.0)};
  product.amplitudes[0] = 1.0;
  EXPECT_TRUE(separabilityTest(product, K));
  EXPECT_FALSE(separabilityTest(buildGHZ({1, 2, 3, 4}, 2, {2, 2, 2, 2}), K));
}

TEST(DenseOracle, ElementBudgetIsEnforced) {
  EXPECT_THROW(sampleHaar(6, 10, 1, 1000), InvalidArgument);
}
