#pragma once

#include "trinv/refstates.hpp"

#include <cmath>
#include <limits>

namespace trinv {

// ---------------------------------------------------------------------------
// Exact finite-N moments

struct MomentReport {
  Rational exactValue;
  Rational gaussianValue;
  Rational prefactor;
  int s = 0;
  std::uint64_t mu = 0;
  Exactness exactness = Exactness::Exact;
};

inline constexpr int kDefaultMomentMaxK = 9;

/// N^{Dk} (N^D - 1)! / (N^D + k - 1)!
inline Rational haarPrefactor(int k, int D, const BigInt& N) {
  require(N >= 1 && k >= 1 && D >= 1, "prefactor needs positive k, D, N");
  const BigInt ND = bigPow(N, static_cast<unsigned>(D));
  BigInt den = 1;
  for (int i = 0; i < k; ++i) den *= ND + i;
  return Rational(bigPow(N, static_cast<unsigned>(D * k)), den);
}

/// Gaussian moment: sum over nu of N^{-sum_c d(sigma_c, nu)}.
inline Rational gaussianMomentExact(const ColoredGraph& G, const BigInt& N, int maxK = kDefaultMomentMaxK) {
  require(G.k() <= maxK, "exact moment needs k <= " + std::to_string(maxK) + " (got k = " +
                             std::to_string(G.k()) + "); use the Monte Carlo oracle instead");
  require(N >= 1, "dimension must be >= 1");
  const auto hist = totalDistanceHistogram(G);
  Rational sum = 0;
  for (std::size_t t = 0; t < hist.size(); ++t)
    if (hist[t]) sum += Rational(BigInt(hist[t]), bigPow(N, static_cast<unsigned>(t)));
  return sum;
}

inline MomentReport haarMomentExact(const ColoredGraph& G, const BigInt& N, int maxK = kDefaultMomentMaxK) {
  MomentReport r;
  r.gaussianValue = gaussianMomentExact(G, N, maxK);
  r.prefactor = haarPrefactor(G.k(), G.D(), N);
  r.exactValue = r.prefactor * r.gaussianValue;
  const auto hist = totalDistanceHistogram(G);
  std::size_t t = 0;
  while (hist[t] == 0) ++t;
  r.s = -static_cast<int>(t);
  r.mu = hist[t];
  ensure(r.exactValue > 0 && r.exactValue <= 1, "Haar moment outside (0, 1]: " + toString(r.exactValue));
  return r;
}

// ---------------------------------------------------------------------------
// Large-N factorization

enum class Tristate { True, False, Unknown };

inline const char* toString(Tristate t) {
  switch (t) {
    case Tristate::True: return "true";
    case Tristate::False: return "false";
    case Tristate::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct FactorizationReport {
  int s = 0;
  std::uint64_t mu = 0;
  std::optional<int> sDoubled;
  std::optional<std::uint64_t> muDoubled;
  Tristate holds = Tristate::Unknown;
  bool byThreshold = false;
};

/// Checks s(G u conj G) = 2 s(G) and mu(G u conj G) = mu(G)^2.
inline FactorizationReport factorizationCheck(const ColoredGraph& G, const SearchBudget& budget = {}) {
  FactorizationReport r;
  auto single = compatibilitySearch(G, budget);
  r.s = -single.minTotalDistance;
  r.mu = single.mu;
  if (single.exactness != Exactness::Exact) return r;
  const int D = G.D();
  if (4 * single.delta < D * (D - 1)) {
    r.holds = Tristate::True;
    r.byThreshold = true;
    return r;
  }
  auto doubled = compatibilitySearch(disjointUnion(G, conjugateGraph(G)), budget);
  if (doubled.exactness != Exactness::Exact) return r;
  r.sDoubled = -doubled.minTotalDistance;
  r.muDoubled = doubled.mu;
  r.holds = (*r.sDoubled == 2 * r.s && *r.muDoubled == r.mu * r.mu) ? Tristate::True : Tristate::False;
  return r;
}

// ---------------------------------------------------------------------------
// Renyi-type monotone

inline double renyiMonotone(double value) {
  const double a = std::abs(value);
  return a == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(a);
}

inline double renyiMonotone(const Rational& value) {
  if (value == 0) return std::numeric_limits<double>::infinity();
  return -std::log(std::abs(value.convert_to<double>()));
}

/// Component of G spanned by the given white vertices, relabeled in order.
inline ColoredGraph inducedComponent(const ColoredGraph& G, const std::vector<int>& whites) {
  std::vector<int> whiteIndex(G.k(), -1), blackIndex(G.k(), -1);
  for (std::size_t i = 0; i < whites.size(); ++i) whiteIndex[whites[i]] = static_cast<int>(i);
  std::vector<int> blacks;
  for (int w : whites) blacks.push_back(G.sigma(1)(w));
  std::sort(blacks.begin(), blacks.end());
  for (std::size_t i = 0; i < blacks.size(); ++i) blackIndex[blacks[i]] = static_cast<int>(i);
  std::vector<Permutation> sig;
  for (int c = 1; c <= G.D(); ++c) {
    std::vector<int> im(whites.size());
    for (std::size_t i = 0; i < whites.size(); ++i) {
      int b = blackIndex[G.sigma(c)(whites[i])];
      ensure(b >= 0, "component is not closed under the colors");
      im[i] = b;
    }
    sig.emplace_back(std::move(im));
  }
  return ColoredGraph(std::move(sig));
}

inline std::vector<ColoredGraph> connectedComponents(const ColoredGraph& G) {
  std::vector<ColoredGraph> out;
  for (const auto& whites : componentWhites(G)) out.push_back(inducedComponent(G, whites));
  return out;
}

/// Names the power-law family a connected graph belongs to, if any.
inline std::optional<std::string> powerLawFamily(const ColoredGraph& G) {
  const int D = G.D();
  const int k = G.k();
  if (classify(G).cyclic) return "cyclic";
  if (k % 2 == 0 && D >= 3) {
    for (int i = 1; i <= D; ++i)
      for (int j = 1; j <= D; ++j)
        if (i != j && isIsomorphic(G, realignment(D, k, {i}, {j})))
          return fmt::format("RM_{}^(B) with |B| = {}", k, D - 2);
  }
  if (D == 3) {
    for (int c = 1; c <= 3; ++c) {
      ColorSet rest = complementColorSet({c}, 3);
      if (k % 2 == 0 && isIsomorphic(G, partialTranspose(3, k, {rest[0]}, {rest[1]})))
        return fmt::format("PT_{}^({})", k, c);
      for (int m = 2; m <= k; m += 2)
        for (int n = 1; n * m <= k; ++n)
          if (m * n == k && isIsomorphic(G, reflectedMultiEntropy(m, n, {c}, 3)))
            return fmt::format("RE_{{{},{}}}^({})", m, n, c);
    }
  }
  return std::nullopt;
}

enum class AsymptoticStatus { Ok, ConditionsNotMet };

struct AsymptoticR {
  AsymptoticStatus status = AsymptoticStatus::ConditionsNotMet;
  int slope = 0;             // coefficient of ln N
  std::uint64_t mu = 1;      // the constant term is -ln(mu)
  double constant = 0.0;
  std::vector<std::string> conditions;
};

/// Leading asymptote <R_G> ~ |s| ln N - ln mu for the Haar-random state.
inline AsymptoticR asymptoticRHaar(const ColoredGraph& G, const SearchBudget& budget = {}) {
  AsymptoticR r;
  bool ok = true;
  int s = 0;
  std::uint64_t mu = 1;
  std::size_t index = 0;
  for (const auto& comp : connectedComponents(G)) {
    ++index;
    auto family = powerLawFamily(comp);
    if (!family) {
      r.conditions.push_back(fmt::format("component {}: not in the power-law catalog", index));
      ok = false;
      continue;
    }
    auto fact = factorizationCheck(comp, budget);
    r.conditions.push_back(fmt::format("component {}: {}, factorization {}{}", index, *family, toString(fact.holds),
                                       fact.byThreshold ? " (degree threshold)" : ""));
    if (fact.holds != Tristate::True) ok = false;
    s += fact.s;
    mu *= fact.mu;
  }
  if (!ok) return r;
  r.status = AsymptoticStatus::Ok;
  r.slope = -s;
  r.mu = mu;
  r.constant = -std::log(static_cast<double>(mu));
  return r;
}

// ---------------------------------------------------------------------------
// Normalized entropy scalings

enum class EntropyFamily { CyclicRenyi, Realignment, PTOdd, PTEven, MultiEntropy, ReflectedEntropy };

/// A row of the scaling tables: a replica family, its replica indices and the
/// distinguished color ordering (c1, c2, c3) for tripartite rows.
struct EntropyRow {
  EntropyFamily family = EntropyFamily::MultiEntropy;
  int D = 3;
  int n = 2;  // replica index (k for cyclic rows)
  int m = 2;  // reflected-entropy index
  std::vector<int> colors{1, 2, 3};
  ColorSet bipartition{1, 2};  // cyclic rows: colors carried by the identity
};

struct EntropyValue {
  Rational value;
  Exactness exactness = Exactness::Exact;
  bool conjectural = false;
};

inline ColoredGraph entropyGraph(const EntropyRow& row, int n) {
  const auto& c = row.colors;
  switch (row.family) {
    case EntropyFamily::CyclicRenyi:
      return cyclicBipartition(row.D, n, complementColorSet(normalizeColorSet(row.bipartition), row.D));
    case EntropyFamily::Realignment:
      require(row.D == 3, "realignment rows are tripartite");
      return realignment(3, 2 * n, {c[1]}, {c[2]});
    case EntropyFamily::PTOdd:
      require(row.D == 3, "partial-transpose rows are tripartite");
      return partialTranspose(3, 2 * n + 1, {c[1]}, {c[2]});
    case EntropyFamily::PTEven:
      require(row.D == 3, "partial-transpose rows are tripartite");
      return partialTranspose(3, 2 * n, {c[1]}, {c[2]});
    case EntropyFamily::MultiEntropy:
      return multiEntropy(n, row.D);
    case EntropyFamily::ReflectedEntropy:
      require(row.D == 3, "reflected-entropy rows are tripartite");
      return reflectedMultiEntropy(row.m, n, {c[0]}, 3);
  }
  throw InvalidArgument("unknown entropy family");
}

/// The normalized scaling of a table row on a named state, as an exact rational.
inline EntropyValue entropyScaling(const EntropyRow& row, const NamedState& state, const SearchBudget& budget = {}) {
  require(state.D == row.D, "state and row have different numbers of colors");
  require(row.n >= 1, "replica index must be >= 1");
  auto sOf = [&](const ColoredGraph& G, Exactness& ex) {
    auto v = scaling(G, state, budget);
    if (v.exactness != Exactness::Exact) ex = Exactness::Bound;
    return v.s;
  };
  EntropyValue out;
  const ColoredGraph G = entropyGraph(row, row.n);
  const Rational s = sOf(G, out.exactness);
  switch (row.family) {
    case EntropyFamily::CyclicRenyi:
      require(row.n >= 2, "cyclic rows need k >= 2");
      out.value = s / (1 - row.n);
      break;
    case EntropyFamily::Realignment:
    case EntropyFamily::PTEven:
      out.value = s;
      break;
    case EntropyFamily::PTOdd:
      out.value = -s / 2;
      break;
    case EntropyFamily::MultiEntropy: {
      require(row.n >= 2, "multi-entropy rows need n >= 2");
      BigInt scale = (1 - row.n) * bigPow(BigInt(row.n), static_cast<unsigned>(row.D - 2));
      out.value = s / Rational(scale);
      out.conjectural = state.kind == StateKind::Haar;
      break;
    }
    case EntropyFamily::ReflectedEntropy: {
      require(row.n >= 2, "reflected-entropy rows need n >= 2");
      const Rational s1 = sOf(entropyGraph(row, 1), out.exactness);
      out.value = (s - row.n * s1) / (1 - row.n);
      out.conjectural = state.kind == StateKind::Haar;
      break;
    }
  }
  return out;
}

}  // namespace trinv
