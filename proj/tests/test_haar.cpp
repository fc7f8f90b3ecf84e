#include "trinv/oracle.hpp"
#include "trinv/suites.hpp"

#include <gtest/gtest.h>

using namespace trinv;

TEST(HaarMoments, PrefactorForSingleCopyIsOne) {
  EXPECT_EQ(haarPrefactor(1, 3, 4), Rational(1));
  EXPECT_EQ(haarPrefactor(2, 2, 2), Rational(16, 4 * 5));
}

TEST(HaarMoments, PurityOfBipartiteState) {
  // Tr rho_A^2 for a Haar state on N x N is 2N / (N^2 + 1).
  for (int N = 2; N <= 5; ++N) {
    auto r = haarMomentExact(cycleGraph(2), N);
    EXPECT_EQ(r.exactValue, Rational(2 * N, N * N + 1)) << "N = " << N;
  }
}

TEST(HaarMoments, LeadingCoefficientIsCatalanForCycles) {
  for (int k = 2; k <= 7; ++k) {
    auto r = haarMomentExact(cycleGraph(k), 2);
    EXPECT_EQ(BigInt(r.mu), catalan(k)) << "k = " << k;
    EXPECT_EQ(r.s, 1 - k);
  }
}

TEST(HaarMoments, ExactAgreesWithMonteCarlo) {
  auto G = realignment(3, 4, {1}, {2});
  const double exact = static_cast<double>(haarMomentExact(G, 2).exactValue);
  auto mc = monteCarloHaarMoment(G, 2, 4000, 7);
  EXPECT_NEAR(mc.mean.real(), exact, 5 * mc.stdError + 1e-12);
}

TEST(HaarMoments, RejectsLargeExactRequests) {
  EXPECT_THROW(haarMomentExact(multiEntropy(2, 4), 2, 6), InvalidArgument);
}

TEST(HaarMoments, FactorizationBelowDegreeThreshold) {
  auto f = factorizationCheck(partialTranspose(3, 3, {1}, {2}));
  EXPECT_EQ(f.holds, Tristate::True);
  EXPECT_TRUE(f.byThreshold);
  EXPECT_EQ(f.s, -3);
}

TEST(HaarMoments, AsymptoteOfPurity) {
  auto a = asymptoticRHaar(cycleGraph(2));
  ASSERT_EQ(a.status, AsymptoticStatus::Ok);
  EXPECT_EQ(a.slope, 1);
  EXPECT_EQ(a.mu, 2u);
}

TEST(EntropyTables, AllTabulatedEntriesMatch) {
  auto rep = tablesSuite();
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}
