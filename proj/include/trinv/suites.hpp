#pragma once

#include "trinv/io.hpp"

namespace trinv {

// ---------------------------------------------------------------------------
// Named fixtures

namespace fixtures {

inline constexpr const char* kNineVertexFlipChain =
    "# partial transpose flipped into a realignment, then two melons\n"
    "root PT D=3 k=3 fwd=1 bwd=2\n"
    "flip 1 1 1 RM D=3 k=4 first=1 second=2\n"
    "flip 1 1 1 Melon D=3\n"
    "flip 2 1 1 Melon D=3\n";

inline constexpr const char* kContractedJointRealignment =
    "# joint realignment contracted with a realignment block\n"
    "root JRM D=3 seq=1,2,3,2,1,2\n"
    "contract W1 B1 RM D=3 k=4 first=1 second=2\n";

inline constexpr const char* kFourColorComposite =
    "# four-color graph separating all subsystems\n"
    "root CompleteGraph D=4\n"
    "flip 1 1 1 Cyclic D=4 k=2 B=2,4\n"
    "flip 2 1 1 RM D=4 k=4 first=2 second=4\n"
    "assume tree-like dominance: realignment block with |B| = D - 2\n"
    "flip 3 1 1 RM D=4 k=4 first=2 second=3\n"
    "assume tree-like dominance: realignment block with |B| = D - 2\n"
    "flip 1 1 1 JRM D=4 seq=1,2,4,2\n"
    "assume tree-like dominance: joint realignment on a cyclic color sequence\n"
    "flip 2 1 1 Melon D=4\n"
    "assume tree-like dominance: melonic insertion\n"
    "flip 2 1 1 Melon D=4\n"
    "assume tree-like dominance: melonic insertion\n"
    "flip 3 1 1 Melon D=4\n"
    "assume tree-like dominance: melonic insertion\n";

/// Two fixed colors of the nine-vertex degree-two search.
inline ThirdColorQuery thirdColorQuery() {
  ThirdColorQuery q;
  q.first = Permutation::identity(9);
  q.second = Permutation::parseCycles(9, "(1 2 3 4 5 6 7)(8 9)");
  q.cyclesOfThird = 4;
  q.facesWithSecond = 3;
  q.minDelta = 2;
  return q;
}

/// One transposition away from the printed third color; Delta = 2, mu = 21.
inline Permutation repairedThirdColor() { return Permutation::parseCycles(9, "(1 4)(2 5 9)(3 7)(6 8)"); }

/// (beta, alpha): beta reaches alpha by a flow but neither dominates pointwise.
inline std::pair<WeightFunction, WeightFunction> flowExample() {
  WeightFunction beta(3, {{{1, 2, 3}, 6}, {{1, 2}, 2}});
  WeightFunction alpha(3, {{{1, 2, 3}, 2}, {{1, 2}, 6}});
  return {beta, alpha};
}

inline std::vector<Permutation> completeGraphMinimizers() {
  return {Permutation::parseCycles(4, "(2 4)"), Permutation::parseCycles(4, "(1 2)(3 4)"),
          Permutation::parseCycles(4, "(1 3)"), Permutation::parseCycles(4, "(1 4)(2 3)")};
}

}  // namespace fixtures

// ---------------------------------------------------------------------------
// Suites

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  bool allPass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
  }
};

inline SuiteReport identitiesSuite() {
  SuiteReport r{"identities", {}};
  for (const auto& c : identitySuite()) r.checks.push_back({c.name, c.pass, ""});
  return r;
}

/// Columns of the tripartite scaling tables, in print order.
inline std::vector<NamedState> tableStates() {
  return {NamedState::ghz(3),     NamedState::ghzOn(3, {1, 2}), NamedState::ghzOn(3, {1, 3}),
          NamedState::ghzOn(3, {2, 3}), NamedState::star(3, 1),     NamedState::star(3, 2),
          NamedState::star(3, 3), NamedState::pComplete(3, 2),  NamedState::haar(3)};
}

struct TableRowExpectation {
  std::string label;
  EntropyFamily family;
  // value for replica index n and column; nullopt marks a conjectural entry
  std::function<std::optional<Rational>(int, std::size_t)> value;
};

inline std::vector<TableRowExpectation> tableExpectations() {
  auto R = [](long a, long b = 1) { return Rational(a, b); };
  std::vector<TableRowExpectation> rows;
  rows.push_back({"cyclic Renyi", EntropyFamily::CyclicRenyi, [R](int, std::size_t col) -> std::optional<Rational> {
                    static const long num[] = {1, 0, 1, 1, 1, 1, 1, 1, 1};
                    static const long den[] = {1, 1, 1, 1, 2, 2, 1, 1, 1};
                    return R(num[col], den[col]);
                  }});
  rows.push_back({"realignment", EntropyFamily::Realignment, [R](int n, std::size_t col) -> std::optional<Rational> {
                    switch (col) {
                      case 0: return R(1 - 2 * n);
                      case 1: case 2: case 4: return R(-n);
                      case 3: return R(2 * (1 - n));
                      case 5: case 6: return R(2 - 3 * n, 2);
                      case 7: return R(1 - 2 * n);
                      default: return R(-2 * n);
                    }
                  }});
  rows.push_back({"partial transpose, odd", EntropyFamily::PTOdd, [R](int n, std::size_t col) -> std::optional<Rational> {
                    return col < 7 ? R(n) : R(3 * n, 2);
                  }});
  rows.push_back({"partial transpose, even", EntropyFamily::PTEven,
                  [R](int n, std::size_t col) -> std::optional<Rational> {
                    switch (col) {
                      case 3: return R(2 * (1 - n));
                      case 5: case 6: return R(3 - 4 * n, 2);
                      case 7: case 8: return R(2 - 3 * n);
                      default: return R(1 - 2 * n);
                    }
                  }});
  rows.push_back({"reflected entropy", EntropyFamily::ReflectedEntropy,
                  [R](int n, std::size_t col) -> std::optional<Rational> {
                    static const long v[] = {1, 0, 0, 2, 0, 1, 1, 1};
                    if (col == 8) return std::nullopt;
                    (void)n;
                    return R(v[col]);
                  }});
  rows.push_back({"multi-entropy", EntropyFamily::MultiEntropy, [R](int n, std::size_t col) -> std::optional<Rational> {
                    if (col == 0) return R(n + 1, n);
                    if (col == 7) return R(3, 2);
                    if (col == 8) return std::nullopt;
                    return R(1);
                  }});
  return rows;
}

inline SuiteReport tablesSuite(const SearchBudget& budget = {}) {
  SuiteReport r{"tables", {}};
  const auto states = tableStates();
  for (const auto& row : tableExpectations()) {
    for (int n : {2, 3}) {
      EntropyRow er;
      er.family = row.family;
      er.n = n;
      for (std::size_t col = 0; col < states.size(); ++col) {
        auto expected = row.value(n, col);
        if (!expected) continue;
        auto got = entropyScaling(er, states[col], budget);
        bool pass = got.exactness == Exactness::Exact && got.value == *expected;
        r.checks.push_back({fmt::format("{} n={} on {}", row.label, n, states[col].name()), pass,
                            fmt::format("got {} expected {}", toString(got.value), toString(*expected))});
      }
    }
  }
  return r;
}

inline SuiteReport completeGraphSuite() {
  SuiteReport r{"complete-graph", {}};
  const ColoredGraph K = completeGraph(4);
  auto add = [&](std::string name, bool pass, std::string detail) {
    r.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const std::vector<std::vector<int>> orders{{1, 2, 3, 4}, {1, 2, 4, 3}, {1, 3, 2, 4}};
  const int expectedGenus[] = {3, 2, 2};
  for (std::size_t i = 0; i < orders.size(); ++i) {
    int g = jacketGenus(K, orders[i]);
    add("genus " + jacketKey(orders[i]), g == expectedGenus[i], fmt::format("{}", g));
  }
  const auto w2 = omegaP(K, 2), w3 = omegaP(K, 3), w23 = omegaPQ(K, 2, 3);
  add("omega_2 = 7", w2 == 7, std::to_string(w2));
  add("omega_3 = 3", w3 == 3, std::to_string(w3));
  add("omega_2 - omega_3 = 4", w2 - w3 == 4, std::to_string(w2 - w3));
  std::int64_t subsetSum = 0;
  for (const auto& B : subsetsOfSize(4, 3)) subsetSum += omegaP(restrict(K, B), 2);
  add("omega_2^(3) = 8 = sum over 3-color restrictions", w23 == 8 && subsetSum == 8,
      fmt::format("closed form {}, subset sum {}", w23, subsetSum));
  SearchBudget exhaustive;
  exhaustive.exhaustiveMaxK = 4;
  auto res = compatibilitySearch(K, exhaustive);
  add("Delta = 1, mu = 4 (exhaustive)", res.exhaustive && res.delta == 1 && res.mu == 4,
      fmt::format("Delta {} mu {}", res.delta, res.mu));
  std::vector<Permutation> found;
  for (const auto& w : res.witnesses) found.push_back(w.nu);
  auto expected = fixtures::completeGraphMinimizers();
  std::sort(found.begin(), found.end());
  std::sort(expected.begin(), expected.end());
  std::string listed;
  for (const auto& p : found) listed += p.toCycleString() + " ";
  add("minimizers are the four listed permutations", found == expected, trim(listed));
  return r;
}

/// Random checks of how faces, components, genera and degrees combine under the
/// three binary operations, plus 1-dipole invariance of the p-complete degrees.
inline SuiteReport operationLawsSuite(std::uint64_t seed = 1, int pairs = 200) {
  SuiteReport r{"binary-op-laws", {}};
  std::mt19937_64 rng(seed);
  int unionBad = 0, flipBad = 0, contractBad = 0, genusBad = 0, omegaBad = 0, OmegaBad = 0, dipoleBad = 0;
  int dipoleTried = 0;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int t = 0; t < pairs; ++t) {
    const int D = pick(3, 4);
    const ColoredGraph G1 = randomGraph(D, pick(1, 4), rng);
    const ColoredGraph G2 = randomGraph(D, pick(1, 4), rng);
    const int c = pick(1, D);
    const ColoredGraph U = disjointUnion(G1, G2);
    const ColoredGraph F = flip(G1, {c, pick(0, G1.k() - 1)}, G2, {c, pick(0, G2.k() - 1)});
    const ColoredGraph V = vertexContract(G1, {Shade::White, pick(0, G1.k() - 1)}, G2,
                                          {Shade::Black, pick(0, G2.k() - 1)});
    const int kap1 = kappa(G1), kap2 = kappa(G2);
    bool u = true, f = true, v = true;
    for (const auto& B : multiColorSubsets(D)) {
      const int a = kappaRestrict(G1, B), b = kappaRestrict(G2, B);
      const int K1 = a - kap1, K2 = b - kap2;
      u = u && kappaRestrict(U, B) == a + b;
      const bool inB = std::binary_search(B.begin(), B.end(), c);
      f = f && kappaRestrict(F, B) == a + b - (inB ? 1 : 0);
      f = f && kappaRestrict(F, B) - kappa(F) == K1 + K2 + (inB ? 0 : 1);
      v = v && kappaRestrict(V, B) == a + b - 1 && kappaRestrict(V, B) - kappa(V) == K1 + K2;
    }
    for (int single = 1; single <= D; ++single) {
      const int a = kappaRestrict(G1, {single}), b = kappaRestrict(G2, {single});
      u = u && kappaRestrict(U, {single}) == a + b;
      f = f && kappaRestrict(F, {single}) == a + b;
      v = v && kappaRestrict(V, {single}) == a + b - 1;
    }
    unionBad += !u;
    flipBad += !f;
    contractBad += !v;
    for (const auto& order : jacketOrders(D)) {
      const int g = jacketGenus(G1, order) + jacketGenus(G2, order);
      if (jacketGenus(U, order) != g || jacketGenus(F, order) != g || jacketGenus(V, order) != g) {
        ++genusBad;
        break;
      }
    }
    const auto w = omegaP(G1, 2) + omegaP(G2, 2);
    omegaBad += (omegaP(U, 2) != w || omegaP(F, 2) != w || omegaP(V, 2) != w);
    for (int col = 1; col <= D; ++col) {
      const int expected = cDegree(G1, col) + cDegree(G2, col) + (col == c ? D - 2 : 0);
      if (cDegree(F, col) != expected) {
        ++OmegaBad;
        break;
      }
    }
    const ColoredGraph G = randomConnectedGraph(D, pick(2, 5), rng);
    const auto dipoles = findOneDipoles(G);
    if (!dipoles.empty()) {
      ++dipoleTried;
      const ColoredGraph C = oneDipoleContract(G, dipoles[rng() % dipoles.size()]);
      for (int p = 2; p <= D - 1; ++p)
        if (omegaP(C, p) != omegaP(G, p)) {
          ++dipoleBad;
          break;
        }
    }
  }
  auto add = [&](std::string name, int bad, int total) {
    r.checks.push_back({std::move(name), bad == 0, fmt::format("{} of {} violated", bad, total)});
  };
  add("union: component counts add on every color subset", unionBad, pairs);
  add("flip: component counts and K_B follow the flip rule", flipBad, pairs);
  add("vertex contraction: component counts and K_B follow the contraction rule", contractBad, pairs);
  add("jacket genus additive under all three operations", genusBad, pairs);
  add("omega_2 additive under all three operations", omegaBad, pairs);
  add("Omega_c gains D - 2 exactly on the flip color", OmegaBad, pairs);
  add("omega_p (2 <= p <= D-1) invariant under 1-dipole contraction", dipoleBad, dipoleTried);
  return r;
}

/// Compares composeDelta against brute force on random small compositions whose
/// sufficient conditions hold.
inline SuiteReport compositionSpotCheck(std::uint64_t seed = 2, int trials = 60) {
  SuiteReport r{"composition", {}};
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int applied = 0, bad = 0;
  std::string firstBad;
  for (int t = 0; t < trials * 20 && applied < trials; ++t) {
    const int D = pick(3, 4);
    const ComposeOp op = static_cast<ComposeOp>(pick(0, 2));
    const ColoredGraph G1 = pick(0, 1) ? randomMelonic(D, pick(1, 4), rng) : randomConnectedGraph(D, pick(1, 4), rng);
    const ColoredGraph G2 = pick(0, 1) ? randomMelonic(D, pick(1, 4), rng) : randomConnectedGraph(D, pick(1, 4), rng);
    if (G1.k() + G2.k() > 8) continue;
    ComposeContext ctx;
    ctx.op = op;
    ColoredGraph H;
    if (op == ComposeOp::Union) {
      H = disjointUnion(G1, G2);
    } else if (op == ComposeOp::Flip) {
      ctx.flipColor = pick(1, D);
      H = flip(G1, {ctx.flipColor, pick(0, G1.k() - 1)}, G2, {ctx.flipColor, pick(0, G2.k() - 1)});
    } else {
      ctx.v1 = {Shade::White, pick(0, G1.k() - 1)};
      ctx.v2 = {Shade::Black, pick(0, G2.k() - 1)};
      H = vertexContract(G1, ctx.v1, G2, ctx.v2);
    }
    auto s1 = compatibilitySearch(G1), s2 = compatibilitySearch(G2);
    auto res = composeDelta(G1, {s1.delta, s1.mu, s1.exactness}, G2, {s2.delta, s2.mu, s2.exactness}, ctx);
    if (!res.known) continue;
    ++applied;
    auto direct = compatibilitySearch(H);
    if (direct.delta != res.delta || direct.mu != res.mu) {
      ++bad;
      if (firstBad.empty())
        firstBad = fmt::format("{}: predicted ({}, {}), brute force ({}, {})", toString(op), res.delta, res.mu,
                               direct.delta, direct.mu);
    }
  }
  r.checks.push_back({"composeDelta agrees with brute force when its conditions hold", bad == 0 && applied > 0,
                      fmt::format("{} compositions, {} disagreements{}", applied, bad,
                                  firstBad.empty() ? "" : "; " + firstBad)});
  return r;
}

inline std::vector<std::string> suiteNames() {
  return {"identities", "tables", "complete-graph", "binary-op-laws", "composition"};
}

inline SuiteReport runSuite(const std::string& name, std::uint64_t seed = 1) {
  if (name == "identities") return identitiesSuite();
  if (name == "tables") return tablesSuite();
  if (name == "complete-graph") return completeGraphSuite();
  if (name == "binary-op-laws") return operationLawsSuite(seed);
  if (name == "composition") return compositionSpotCheck(seed + 1);
  std::string known;
  for (const auto& s : suiteNames()) known += (known.empty() ? "" : ", ") + s;
  throw InvalidArgument("unknown suite \"" + name + "\" (known: " + known + ")");
}

}  // namespace trinv
