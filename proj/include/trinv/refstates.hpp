#pragma once

#include "trinv/families.hpp"

#include <deque>
#include <functional>
#include <set>

namespace trinv {

// ---------------------------------------------------------------------------
// Weight functions

/// Sparse map from multi-color subsets to integer weights; absent subsets weigh 1.
class WeightFunction {
 public:
  WeightFunction() = default;
  explicit WeightFunction(int D) : D_(D) { require(D >= 1, "weight function needs D >= 1"); }
  WeightFunction(int D, std::initializer_list<std::pair<ColorSet, BigInt>> entries) : WeightFunction(D) {
    for (const auto& [B, w] : entries) set(B, w);
  }

  int D() const { return D_; }

  BigInt at(const ColorSet& B) const {
    auto it = weights_.find(normalizeColorSet(B));
    return it == weights_.end() ? BigInt(1) : it->second;
  }

  void set(ColorSet B, const BigInt& w) {
    B = normalizeColorSet(std::move(B));
    require(B.size() >= 2, "weights live on subsets with at least two colors");
    require(B.front() >= 1 && B.back() <= D_, "weight subset {" + colorSetKey(B) + "} out of range");
    require(w >= 1, "weight of {" + colorSetKey(B) + "} must be >= 1");
    if (w == 1)
      weights_.erase(B);
    else
      weights_[B] = w;
  }

  void multiply(const ColorSet& B, const BigInt& factor) { set(B, at(B) * factor); }

  const std::map<ColorSet, BigInt>& entries() const { return weights_; }
  bool isSeparable() const { return weights_.empty(); }

  BigInt product() const {
    BigInt p = 1;
    for (const auto& [B, w] : weights_) p *= w;
    return p;
  }

  std::string toString() const {
    if (weights_.empty()) return "{}";
    std::string s = "{";
    bool first = true;
    for (const auto& [B, w] : weights_) {
      s += (first ? "" : ", ") + colorSetKey(B) + ":" + w.str();
      first = false;
    }
    return s + "}";
  }

  bool operator==(const WeightFunction&) const = default;

 private:
  int D_ = 0;
  std::map<ColorSet, BigInt> weights_;
};

inline WeightFunction pointwiseProduct(const WeightFunction& a, const WeightFunction& b) {
  require(a.D() == b.D(), "weight functions with different D");
  WeightFunction out = a;
  for (const auto& [B, w] : b.entries()) out.multiply(B, w);
  return out;
}

// ---------------------------------------------------------------------------
// Weighted partitions and multisets

struct Subsystem {
  int color = 1;
  int copy = 1;
  auto operator<=>(const Subsystem&) const = default;
};

struct WeightedBlock {
  std::vector<Subsystem> members;
  BigInt weight = 1;
};

struct WeightedPartition {
  int D = 0;
  std::vector<WeightedBlock> blocks;
};

/// A hyper-edge of the coarse-grained picture: colors may repeat.
struct WeightedMultiset {
  std::vector<int> colors;
  BigInt weight = 1;
};

inline void validatePartition(const WeightedPartition& pi) {
  std::set<Subsystem> seen;
  for (std::size_t b = 0; b < pi.blocks.size(); ++b) {
    const auto& block = pi.blocks[b];
    require(!block.members.empty(), "block " + std::to_string(b + 1) + " of the partition is empty");
    require(block.weight >= 1, "block " + std::to_string(b + 1) + " has weight < 1");
    for (const auto& s : block.members) {
      require(s.color >= 1 && s.color <= pi.D, "subsystem color out of range");
      require(seen.insert(s).second, "subsystem " + std::to_string(s.color) + "_" + std::to_string(s.copy) +
                                         " appears in two blocks");
    }
  }
}

inline std::vector<WeightedMultiset> toMultiset(const WeightedPartition& pi) {
  validatePartition(pi);
  std::vector<WeightedMultiset> out;
  for (const auto& block : pi.blocks) {
    WeightedMultiset m;
    m.weight = block.weight;
    for (const auto& s : block.members) m.colors.push_back(s.color);
    std::sort(m.colors.begin(), m.colors.end());
    out.push_back(std::move(m));
  }
  return out;
}

/// Reduces a weighted multiset to its canonical weight function: drops univalent
/// and weight-one hyper-edges, replaces each hyper-edge by its support and merges
/// equal supports multiplicatively.
inline WeightFunction canonicalizeMultiset(const std::vector<WeightedMultiset>& M, int D) {
  WeightFunction alpha(D);
  for (const auto& edge : M) {
    require(edge.weight >= 1, "hyper-edge weight must be >= 1");
    ColorSet support = normalizeColorSet(edge.colors);
    if (support.size() < 2 || edge.weight == 1) continue;
    alpha.multiply(support, edge.weight);
  }
  return alpha;
}

inline WeightFunction canonicalize(const WeightedPartition& pi) {
  return canonicalizeMultiset(toMultiset(pi), pi.D);
}

// ---------------------------------------------------------------------------
// Exact evaluation on reference states

struct FactoredValue {
  std::map<ColorSet, std::pair<BigInt, int>> factors;  // subset -> (weight, exponent)

  Rational value() const {
    Rational v = 1;
    for (const auto& [B, f] : factors) v *= ratPow(Rational(f.first), f.second);
    return v;
  }

  std::string toString() const {
    std::string s;
    for (const auto& [B, f] : factors) {
      if (f.second == 0) continue;
      if (!s.empty()) s += " * ";
      s += f.first.str() + "^(" + std::to_string(f.second) + ")";
    }
    return s.empty() ? "1" : s;
  }
};

inline FactoredValue evaluateOnReference(const ColoredGraph& G, const WeightFunction& alpha) {
  require(alpha.D() == G.D(), "state and graph have different numbers of colors");
  FactoredValue out;
  for (const auto& [B, w] : alpha.entries()) {
    const int e = kappaRestrict(G, B) - G.k();
    ensure(e <= 0, "restriction has more components than white vertices");
    out.factors[B] = {w, e};
  }
  return out;
}

/// Scaling exponent of a state built from GHZ blocks of equal dimension N^(1/I).
inline Rational scalingOnUniformState(const ColoredGraph& G, const std::vector<ColorSet>& supports, int I) {
  require(I >= 1, "fine-graining parameter must be >= 1");
  long total = 0;
  for (const auto& B : supports) {
    ColorSet s = normalizeColorSet(B);
    if (s.size() < 2) continue;
    total += kappaRestrict(G, s) - G.k();
  }
  return Rational(total, I);
}

// ---------------------------------------------------------------------------
// Named reference states

enum class StateKind { GHZ, GHZRestricted, GHZFraction, Cyclic, PComplete, CStar, StarSet, Haar };

struct NamedState {
  StateKind kind = StateKind::GHZ;
  int D = 3;
  ColorSet B;              // GHZRestricted, StarSet
  int c = 1;               // CStar
  int p = 2;               // PComplete
  std::vector<int> tau;    // Cyclic: 1-based images of a permutation of the colors
  int I = 1;               // GHZFraction

  static NamedState of(StateKind kind, int D) {
    NamedState s;
    s.kind = kind;
    s.D = D;
    return s;
  }

  static NamedState ghz(int D) { return of(StateKind::GHZ, D); }
  static NamedState ghzOn(int D, ColorSet B) {
    NamedState s = of(StateKind::GHZRestricted, D);
    s.B = normalizeColorSet(std::move(B));
    return s;
  }
  static NamedState ghzFraction(int D, int I) {
    NamedState s = of(StateKind::GHZFraction, D);
    s.I = I;
    return s;
  }
  static NamedState cyclic(int D, std::vector<int> tau) {
    NamedState s = of(StateKind::Cyclic, D);
    s.tau = std::move(tau);
    return s;
  }
  static NamedState pComplete(int D, int p) {
    NamedState s = of(StateKind::PComplete, D);
    s.p = p;
    return s;
  }
  static NamedState star(int D, int c) {
    NamedState s = of(StateKind::CStar, D);
    s.c = c;
    return s;
  }
  static NamedState starSet(int D, ColorSet B) {
    NamedState s = of(StateKind::StarSet, D);
    s.B = normalizeColorSet(std::move(B));
    return s;
  }
  static NamedState haar(int D) { return of(StateKind::Haar, D); }

  /// GHZ supports (with multiplicity) and the common fine-graining parameter.
  std::pair<std::vector<ColorSet>, int> blocks() const {
    std::vector<ColorSet> out;
    switch (kind) {
      case StateKind::GHZ:
        return {{fullColorSet(D)}, 1};
      case StateKind::GHZFraction:
        require(I >= 1, "GHZ fraction needs I >= 1");
        return {{fullColorSet(D)}, I};
      case StateKind::GHZRestricted:
        require(B.size() >= 2 && B.back() <= D, "restricted GHZ needs a subset of >= 2 colors");
        return {{B}, 1};
      case StateKind::Cyclic: {
        require(static_cast<int>(tau.size()) == D, "cyclic state needs a permutation of the D colors");
        Permutation::fromOneBased(tau);
        for (int i = 1; i <= D; ++i)
          if (tau[i - 1] != i) out.push_back(normalizeColorSet({i, tau[i - 1]}));
        return {out, 2};
      }
      case StateKind::PComplete:
        require(p >= 2 && p <= D, "p-complete state needs 2 <= p <= D");
        return {subsetsOfSize(D, p), static_cast<int>(binomial(D - 1, p - 1))};
      case StateKind::CStar:
        require(c >= 1 && c <= D, "star center out of range");
        for (int o = 1; o <= D; ++o)
          if (o != c) out.push_back(normalizeColorSet({c, o}));
        return {out, D - 1};
      case StateKind::StarSet:
        require(!B.empty() && B.back() <= D, "star set needs colors in range");
        for (int center : B)
          for (int o = 1; o <= D; ++o)
            if (o != center) out.push_back(normalizeColorSet({center, o}));
        return {out, static_cast<int>(B.size()) * (D - 1)};
      case StateKind::Haar:
        throw InvalidArgument("the Haar-random state has no GHZ block structure");
    }
    return {out, 1};
  }

  /// The weight function of the state when every GHZ block has dimension N.
  WeightFunction weights(const BigInt& N) const {
    require(N >= 1, "dimension must be >= 1");
    auto [supports, fine] = blocks();
    BigInt blockDim = N;
    if (kind == StateKind::GHZFraction) {
      blockDim = exactRoot(N, static_cast<unsigned>(I));
      require(blockDim >= 1, "N = " + N.str() + " is not a perfect " + std::to_string(I) + "-th power");
    }
    WeightFunction alpha(D);
    for (const auto& s : supports) alpha.multiply(s, blockDim);
    return alpha;
  }

  std::string name() const {
    switch (kind) {
      case StateKind::GHZ: return "GHZ";
      case StateKind::GHZRestricted: return "GHZ|" + colorSetKey(B);
      case StateKind::GHZFraction: return "GHZ^(1/" + std::to_string(I) + ")";
      case StateKind::Cyclic: {
        std::string s = "Phi_tau[";
        for (std::size_t i = 0; i < tau.size(); ++i) s += (i ? "," : "") + std::to_string(tau[i]);
        return s + "]";
      }
      case StateKind::PComplete: return "phi_" + std::to_string(p);
      case StateKind::CStar: return "Phi_" + std::to_string(c);
      case StateKind::StarSet: return "Phi_{" + colorSetKey(B) + "}";
      case StateKind::Haar: return "Haar";
    }
    return "?";
  }
};

struct ScalingValue {
  Rational s;
  Exactness exactness = Exactness::Exact;
};

/// Scaling exponent s_G of a named state in powers of N.
inline ScalingValue scaling(const ColoredGraph& G, const NamedState& state, const SearchBudget& budget = {}) {
  require(state.D == G.D(), "state and graph have different numbers of colors");
  if (state.kind == StateKind::Haar) {
    auto h = haarScaling(G, budget);
    return {Rational(h.s), h.exactness};
  }
  auto [supports, I] = state.blocks();
  return {scalingOnUniformState(G, supports, I), Exactness::Exact};
}

// ---------------------------------------------------------------------------
// LU classification and reconstruction

inline bool luEqual(const WeightFunction& a, const WeightFunction& b) {
  require(a.D() == b.D(), "weight functions with different D");
  return a == b;
}

using TraceOracle = std::function<Rational(const ColoredGraph&)>;

namespace detail {

inline Rational positiveValue(const TraceOracle& oracle, const ColoredGraph& G) {
  Rational v = oracle(G);
  require(v > 0, "oracle value must be positive on a reference state");
  return v;
}

inline BigInt requireInteger(const Rational& q, const std::string& what) {
  require(boost::multiprecision::denominator(q) == 1 && q >= 1,
          "not a reference state: " + what + " = " + toString(q) + " is not a positive integer");
  return boost::multiprecision::numerator(q);
}

/// Graphs whose restriction exponents determine every log-weight.
inline std::vector<ColoredGraph> reconstructionFamily(int D) {
  std::vector<ColoredGraph> out;
  for (int n : {2, 3}) out.push_back(multiEntropy(n, D));
  // Independent cyclic shifts on the colors of S, identity elsewhere.
  for (int size = 1; size < D; ++size)
    for (const auto& S : subsetsOfSize(D, size))
      for (int n : {2, 3}) {
        ColoredGraph shifts = multiEntropy(n, size + 1);
        std::vector<Permutation> sig(D, Permutation::identity(shifts.k()));
        for (int i = 0; i < size; ++i) sig[S[i] - 1] = shifts.sigma(i + 1);
        out.emplace_back(std::move(sig));
      }
  for (int size = 1; size < D; ++size)
    for (const auto& traced : subsetsOfSize(D, size)) {
      out.push_back(cyclicBipartition(D, 2, traced));
      if (D - size >= 2) out.push_back(reflectedMultiEntropy(2, 2, traced, D));
    }
  return out;
}

}  // namespace detail

/// Recovers the weight function from exact trace values on a fixed graph family.
///
/// For D = 3 the weights follow in closed form from ME(2,3), ME(3,3) and the
/// three two-vertex cyclic graphs; for other D the log-linear system over all
/// multi-color subsets is solved exactly and the weights are extracted as
/// integer roots.
inline WeightFunction reconstructAlpha(int D, const TraceOracle& oracle) {
  require(D >= 2, "reconstruction needs D >= 2");
  WeightFunction alpha(D);
  if (D == 2) {
    // Tr_{C_2} = alpha^{-1}.
    alpha.set({1, 2}, detail::requireInteger(1 / detail::positiveValue(oracle, cycleGraph(2)), "alpha(1,2)"));
  } else if (D == 3) {
    const Rational m2 = detail::positiveValue(oracle, multiEntropy(2, 3));
    const Rational m3 = detail::positiveValue(oracle, multiEntropy(3, 3));
    Rational t[4];
    for (int c = 1; c <= 3; ++c) t[c] = detail::positiveValue(oracle, cyclicBipartition(3, 2, {c}));
    const Rational top = m3 / (m2 * m2 * m2);
    alpha.set({1, 2, 3}, detail::requireInteger(top, "alpha(1,2,3)"));
    for (int c = 1; c <= 3; ++c) {
      ColorSet pair = complementColorSet({c}, 3);
      const std::string label = "alpha(" + colorSetKey(pair) + ")^2";
      BigInt sq = detail::requireInteger(t[c] * t[c] / (m2 * top), label);
      BigInt root = exactRoot(sq, 2);
      require(root >= 1, "not a reference state: " + label + " = " + sq.str() + " is not a square");
      alpha.set(pair, root);
    }
  } else {
    const auto subsets = multiColorSubsets(D);
    const std::size_t n = subsets.size();
    const auto family = detail::reconstructionFamily(D);
    // Greedy selection of independent rows; each row is augmented with a unit vector
    // so that the final inverse expresses every log-weight through graph values.
    std::vector<std::vector<Rational>> rows;
    std::vector<std::size_t> chosen;
    std::vector<std::vector<Rational>> basis;  // row-reduced copies for rank tests
    std::vector<std::size_t> pivots;
    for (std::size_t g = 0; g < family.size() && chosen.size() < n; ++g) {
      std::vector<Rational> row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = Rational(family[g].k() - kappaRestrict(family[g], subsets[j]));
      std::vector<Rational> red = row;
      for (std::size_t b = 0; b < basis.size(); ++b)
        if (red[pivots[b]] != 0) {
          Rational f = red[pivots[b]] / basis[b][pivots[b]];
          for (std::size_t j = 0; j < n; ++j) red[j] -= f * basis[b][j];
        }
      auto piv = std::find_if(red.begin(), red.end(), [](const Rational& x) { return x != 0; });
      if (piv == red.end()) continue;
      basis.push_back(red);
      pivots.push_back(static_cast<std::size_t>(piv - red.begin()));
      rows.push_back(row);
      chosen.push_back(g);
    }
    ensure(chosen.size() == n, "reconstruction family does not have full rank");
    // Invert the square system A P = L where L_g = -ln Tr_g.
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug[i][j] = rows[i][j];
      aug[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (aug[piv][col] == 0) ++piv;
      std::swap(aug[piv], aug[col]);
      Rational inv = 1 / aug[col][col];
      for (auto& x : aug[col]) x *= inv;
      for (std::size_t r = 0; r < n; ++r)
        if (r != col && aug[r][col] != 0) {
          Rational f = aug[r][col];
          for (std::size_t j = 0; j < 2 * n; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    std::vector<Rational> values(n);
    for (std::size_t g = 0; g < n; ++g) values[g] = detail::positiveValue(oracle, family[chosen[g]]);
    for (std::size_t j = 0; j < n; ++j) {
      // ln alpha_j = sum_g inv[j][g] * (-ln v_g); clear denominators then take a root.
      BigInt lcm = 1;
      for (std::size_t g = 0; g < n; ++g) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(aug[j][n + g]));
      Rational powered = 1;
      for (std::size_t g = 0; g < n; ++g) {
        Rational e = -aug[j][n + g] * Rational(lcm);
        powered *= ratPow(values[g], static_cast<long>(boost::multiprecision::numerator(e)));
      }
      BigInt whole = detail::requireInteger(powered, "alpha(" + colorSetKey(subsets[j]) + ")^" + lcm.str());
      BigInt root = exactRoot(whole, static_cast<unsigned>(lcm));
      require(root >= 1, "not a reference state: alpha(" + colorSetKey(subsets[j]) + ") is not an integer");
      alpha.set(subsets[j], root);
    }
  }
  for (const auto& G : detail::reconstructionFamily(D))
    require(evaluateOnReference(G, alpha).value() == oracle(G),
            "not a reference state: reconstructed weights disagree with the oracle on " + G.toString());
  return alpha;
}

// ---------------------------------------------------------------------------
// LO and LOCC orders

/// beta ->LO alpha: alpha(B) divides beta(B) everywhere.
inline bool loLessEqual(const WeightFunction& beta, const WeightFunction& alpha) {
  require(alpha.D() == beta.D(), "weight functions with different D");
  for (const auto& [B, a] : alpha.entries())
    if (beta.at(B) % a != 0) return false;
  return true;
}

inline bool loccPointwiseLE(const WeightFunction& beta, const WeightFunction& alpha) {
  require(alpha.D() == beta.D(), "weight functions with different D");
  for (const auto& [B, a] : alpha.entries())
    if (beta.at(B) < a) return false;
  return true;
}

/// Flow on the Hasse diagram: (larger set, subset one color smaller) -> factor.
using Flow = std::map<std::pair<ColorSet, ColorSet>, BigInt>;

inline std::vector<std::pair<ColorSet, ColorSet>> hasseEdges(int D) {
  std::vector<std::pair<ColorSet, ColorSet>> out;
  for (const auto& B : multiColorSubsets(D)) {
    if (B.size() < 3) continue;
    for (std::size_t drop = 0; drop < B.size(); ++drop) {
      ColorSet C;
      for (std::size_t i = 0; i < B.size(); ++i)
        if (i != drop) C.push_back(B[i]);
      out.emplace_back(B, C);
    }
  }
  return out;
}

namespace detail {

inline std::map<BigInt, int> factorize(BigInt n) {
  std::map<BigInt, int> f;
  for (BigInt p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  if (n > 1) ++f[n];
  return f;
}

inline int valuation(BigInt n, const BigInt& p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Edmonds-Karp maximum flow on a dense capacity matrix.
inline long maxFlow(std::vector<std::vector<long>>& cap, int s, int t, std::vector<std::vector<long>>& flow) {
  const int n = static_cast<int>(cap.size());
  flow.assign(n, std::vector<long>(n, 0));
  long total = 0;
  for (;;) {
    std::vector<int> parent(n, -1);
    parent[s] = s;
    std::deque<int> q{s};
    while (!q.empty() && parent[t] < 0) {
      int u = q.front();
      q.pop_front();
      for (int v = 0; v < n; ++v)
        if (parent[v] < 0 && cap[u][v] - flow[u][v] > 0) {
          parent[v] = u;
          q.push_back(v);
        }
    }
    if (parent[t] < 0) return total;
    long push = std::numeric_limits<long>::max();
    for (int v = t; v != s; v = parent[v]) push = std::min(push, cap[parent[v]][v] - flow[parent[v]][v]);
    for (int v = t; v != s; v = parent[v]) {
      flow[parent[v]][v] += push;
      flow[v][parent[v]] -= push;
    }
    total += push;
  }
}

}  // namespace detail

/// Decides whether alpha <= beta in the flow order and returns a witness flow.
///
/// Per prime, the exponents must satisfy out(B) - in(B) = v(beta(B)) - v(alpha(B))
/// with non-negative flow along Hasse edges; this is a transportation problem solved
/// by maximum flow, and the per-prime flows multiply into the witness.
inline std::optional<Flow> loccFlowOrder(const WeightFunction& beta, const WeightFunction& alpha) {
  require(alpha.D() == beta.D(), "weight functions with different D");
  const int D = alpha.D();
  if (alpha.product() != beta.product()) return std::nullopt;
  const auto nodes = multiColorSubsets(D);
  const auto edges = hasseEdges(D);
  std::map<ColorSet, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
  std::set<BigInt> primes;
  for (const auto* w : {&alpha, &beta})
    for (const auto& [B, v] : w->entries())
      for (const auto& [p, e] : detail::factorize(v)) primes.insert(p);
  Flow gamma;
  for (const auto& e : edges) gamma[e] = 1;
  const int n = static_cast<int>(nodes.size());
  const int src = n, snk = n + 1;
  const long inf = std::numeric_limits<long>::max() / 4;
  for (const auto& p : primes) {
    std::vector<std::vector<long>> cap(n + 2, std::vector<long>(n + 2, 0));
    long supply = 0, demand = 0;
    for (int i = 0; i < n; ++i) {
      long diff = detail::valuation(beta.at(nodes[i]), p) - detail::valuation(alpha.at(nodes[i]), p);
      if (diff > 0) {
        cap[src][i] = diff;
        supply += diff;
      } else if (diff < 0) {
        cap[i][snk] = -diff;
        demand -= diff;
      }
    }
    if (supply != demand) return std::nullopt;
    for (const auto& [B, C] : edges) cap[index[B]][index[C]] = inf;
    std::vector<std::vector<long>> flow;
    if (detail::maxFlow(cap, src, snk, flow) != supply) return std::nullopt;
    for (const auto& [B, C] : edges) {
      long x = flow[index[B]][index[C]];
      if (x > 0) gamma[{B, C}] *= bigPow(p, static_cast<unsigned>(x));
    }
  }
  // alpha(B) gamma_out(B) = beta(B) gamma_in(B) for every B.
  for (const auto& B : nodes) {
    BigInt out = 1, in = 1;
    for (const auto& [e, g] : gamma) {
      if (e.first == B) out *= g;
      if (e.second == B) in *= g;
    }
    ensure(alpha.at(B) * out == beta.at(B) * in, "flow witness violates the balance condition");
  }
  return gamma;
}

/// One teleportation step from beta: B1 and B2 lose a factor N, their union gains it.
inline WeightFunction teleportationMove(const WeightFunction& beta, ColorSet B1, ColorSet B2, const BigInt& N) {
  B1 = normalizeColorSet(std::move(B1));
  B2 = normalizeColorSet(std::move(B2));
  require(B1.size() >= 2 && B2.size() >= 2, "teleportation blocks need at least two colors");
  require(N >= 1, "teleportation dimension must be >= 1");
  ColorSet meet;
  std::set_intersection(B1.begin(), B1.end(), B2.begin(), B2.end(), std::back_inserter(meet));
  require(!meet.empty(), "teleportation blocks must intersect");
  ColorSet join;
  std::set_union(B1.begin(), B1.end(), B2.begin(), B2.end(), std::back_inserter(join));
  require(join != B1 && join != B2, "teleportation blocks must not be nested");
  require(beta.at(B1) % N == 0, "N does not divide beta({" + colorSetKey(B1) + "})");
  require(beta.at(B2) % N == 0, "N does not divide beta({" + colorSetKey(B2) + "})");
  WeightFunction alpha = beta;
  alpha.set(B1, beta.at(B1) / N);
  alpha.set(B2, beta.at(B2) / N);
  alpha.set(join, beta.at(join) * N);
  return alpha;
}

enum class LoccVerdict { Established, NotEstablished };

inline const char* toString(LoccVerdict v) {
  return v == LoccVerdict::Established ? "ESTABLISHED" : "NOT_ESTABLISHED";
}

struct LoccReport {
  LoccVerdict verdict = LoccVerdict::NotEstablished;
  std::vector<std::string> moves;  // from beta to the state that dominates alpha
  std::size_t explored = 0;
};

/// Sufficient test for beta ->LOCC alpha: closes beta under flow and teleportation
/// moves (prime factors only) and looks for a state that reaches alpha by a flow or
/// a pointwise decrease.
inline LoccReport loccReachableSufficient(const WeightFunction& beta, const WeightFunction& alpha,
                                          std::size_t budget = 2000) {
  require(alpha.D() == beta.D(), "weight functions with different D");
  const int D = alpha.D();
  const auto subsets = multiColorSubsets(D);
  const auto edges = hasseEdges(D);
  std::map<std::string, std::vector<std::string>> path;
  std::deque<WeightFunction> queue{beta};
  path[beta.toString()] = {};
  LoccReport report;
  while (!queue.empty() && report.explored < budget) {
    WeightFunction x = queue.front();
    queue.pop_front();
    ++report.explored;
    const auto& trail = path[x.toString()];
    if (loccPointwiseLE(x, alpha)) {
      report.verdict = LoccVerdict::Established;
      report.moves = trail;
      report.moves.push_back("pointwise decrease to " + alpha.toString());
      return report;
    }
    if (loccFlowOrder(x, alpha)) {
      report.verdict = LoccVerdict::Established;
      report.moves = trail;
      report.moves.push_back("flow to " + alpha.toString());
      return report;
    }
    auto visit = [&](WeightFunction y, std::string move) {
      auto key = y.toString();
      if (path.count(key)) return;
      auto t = trail;
      t.push_back(std::move(move));
      path[key] = std::move(t);
      queue.push_back(std::move(y));
    };
    for (const auto& [B, C] : edges)
      for (const auto& [p, e] : detail::factorize(x.at(B))) {
        WeightFunction y = x;
        y.set(B, x.at(B) / p);
        y.multiply(C, p);
        visit(std::move(y), "flow " + p.str() + " from {" + colorSetKey(B) + "} to {" + colorSetKey(C) + "}");
      }
    for (std::size_t i = 0; i < subsets.size(); ++i)
      for (std::size_t j = i + 1; j < subsets.size(); ++j) {
        const auto& B1 = subsets[i];
        const auto& B2 = subsets[j];
        if (isSubset(B1, B2) || isSubset(B2, B1)) continue;
        ColorSet meet;
        std::set_intersection(B1.begin(), B1.end(), B2.begin(), B2.end(), std::back_inserter(meet));
        if (meet.empty()) continue;
        BigInt g = boost::multiprecision::gcd(x.at(B1), x.at(B2));
        for (const auto& [p, e] : detail::factorize(g))
          visit(teleportationMove(x, B1, B2, p), "teleport " + p.str() + " via {" + colorSetKey(B1) + "}, {" +
                                                     colorSetKey(B2) + "}");
      }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Coarse-graining and separability

inline WeightFunction coarseGrainAlpha(const WeightFunction& alpha, const ColorPartition& zeta) {
  validatePartition(zeta, alpha.D());
  std::vector<int> blockOf(alpha.D() + 1);
  for (std::size_t b = 0; b < zeta.size(); ++b)
    for (int c : zeta[b]) blockOf[c] = static_cast<int>(b) + 1;
  WeightFunction out(static_cast<int>(zeta.size()));
  for (const auto& [B, w] : alpha.entries()) {
    ColorSet trace;
    for (int c : B) trace.push_back(blockOf[c]);
    trace = normalizeColorSet(trace);
    if (trace.size() >= 2) out.multiply(trace, w);
  }
  return out;
}

/// Product of the weights of all blocks that cross the bipartition A | complement.
inline BigInt bipartitionCoefficient(const WeightFunction& alpha, ColorSet A) {
  A = normalizeColorSet(std::move(A));
  BigInt a = 1;
  for (const auto& [B, w] : alpha.entries()) {
    bool inside = false, outside = false;
    for (int c : B) (std::binary_search(A.begin(), A.end(), c) ? inside : outside) = true;
    if (inside && outside) a *= w;
  }
  return a;
}

/// All partitions of {1..D} into exactly `blocks` non-empty blocks.
inline std::vector<ColorPartition> setPartitions(int D, int blocks) {
  std::vector<ColorPartition> out;
  std::vector<int> label(D, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (D - i < blocks - used) return;
    if (i == D) {
      if (used != blocks) return;
      ColorPartition zeta(blocks);
      for (int c = 0; c < D; ++c) zeta[label[c]].push_back(c + 1);
      out.push_back(std::move(zeta));
      return;
    }
    for (int b = 0; b <= used && b < blocks; ++b) {
      label[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

inline bool dPrimeEquivalent(const WeightFunction& a, const WeightFunction& b, int Dprime) {
  require(a.D() == b.D(), "weight functions with different D");
  require(Dprime >= 2 && Dprime < a.D(), "need 2 <= D' < D");
  for (const auto& zeta : setPartitions(a.D(), Dprime))
    if (!(coarseGrainAlpha(a, zeta) == coarseGrainAlpha(b, zeta))) return false;
  return true;
}

struct SeparabilityStructure {
  ColorPartition components;
  int depth = 1;
  int maxParts = 0;
};

inline SeparabilityStructure separabilityStructure(const WeightFunction& alpha) {
  detail::UnionFind uf(alpha.D());
  for (const auto& [B, w] : alpha.entries())
    for (std::size_t i = 1; i < B.size(); ++i) uf.unite(B[0] - 1, B[i] - 1);
  std::map<int, ColorSet> groups;
  for (int c = 1; c <= alpha.D(); ++c) groups[uf.find(c - 1)].push_back(c);
  SeparabilityStructure s;
  for (auto& [root, g] : groups) {
    s.depth = std::max(s.depth, static_cast<int>(g.size()));
    s.components.push_back(g);
  }
  std::sort(s.components.begin(), s.components.end());
  s.maxParts = static_cast<int>(s.components.size());
  return s;
}

inline SeparabilityStructure separabilityStructure(const WeightedPartition& pi) {
  return separabilityStructure(canonicalize(pi));
}

}  // namespace trinv
