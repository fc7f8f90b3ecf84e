#pragma once

#include "trinv/colored_graph.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trinv {

// ---------------------------------------------------------------------------
// Combinatorial degrees

/// Cyclic orders of the colors up to reversal, as [1, a2, ..., aD] with a2 < aD.
inline std::vector<std::vector<int>> jacketOrders(int D) {
  std::vector<std::vector<int>> out;
  if (D < 3) return out;
  std::vector<int> rest(D - 1);
  std::iota(rest.begin(), rest.end(), 2);
  do {
    if (rest.front() < rest.back()) {
      std::vector<int> order{1};
      order.insert(order.end(), rest.begin(), rest.end());
      out.push_back(std::move(order));
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

/// Genus of the jacket with the given cyclic color order, summed over components.
inline int jacketGenus(const ColoredGraph& G, const std::vector<int>& order) {
  const int D = G.D();
  require(static_cast<int>(order.size()) == D, "jacket order must list every color once");
  auto F = faces(G);
  int faceSum = 0;
  for (int i = 0; i < D; ++i) faceSum += F.at(order[i], order[(i + 1) % D]);
  const int twice = 2 * kappa(G) + (D - 2) * G.k() - faceSum;
  ensure(twice % 2 == 0 && twice >= 0,
         "jacket Euler characteristic has the wrong parity or sign for " + G.toString());
  return twice / 2;
}

/// Sum of kappa over all restrictions to p colors.
inline int kappaP(const ColoredGraph& G, int p) {
  require(p >= 1 && p <= G.D(), "kappa^(p) needs 1 <= p <= D");
  int total = 0;
  for (const auto& B : subsetsOfSize(G.D(), p)) total += kappaRestrict(G, B);
  return total;
}

inline std::int64_t completeDegreeWeight(int D, int p) { return binomial(D - 1, p - 1); }

/// The p-complete degree; p = 2 is the Gurau degree.
inline std::int64_t omegaP(const ColoredGraph& G, int p) {
  const int D = G.D();
  require(p >= 2 && p <= D, "omega_p needs 2 <= p <= D");
  return completeDegreeWeight(D, p) * kappa(G) + completeDegreeWeight(D, p + 1) * G.k() -
         kappaP(G, p);
}

inline std::int64_t omegaPQ(const ColoredGraph& G, int p, int q) {
  const int D = G.D();
  require(2 <= p && p <= q && q <= D, "omega_p^(q) needs 2 <= p <= q <= D");
  if (p == q) return 0;
  return binomial(q - 1, p - 1) * kappaP(G, q) + binomial(q - 1, p) * binomial(D, q) * G.k() -
         binomial(D - p, q - p) * kappaP(G, p);
}

inline int cDegree(const ColoredGraph& G, int c) {
  auto F = faces(G);
  return kappa(G) + (G.D() - 2) * G.k() - F.colorTotal(c);
}

struct DegreeReport {
  int D = 0;
  int k = 0;
  int kappa = 0;
  int kappaMinusK = 0;
  FaceTable faces;
  std::map<ColorSet, int> K;                 // kappa(G|_B) - kappa(G)
  std::map<std::vector<int>, int> genus;     // jacket order -> genus
  std::int64_t gurauDegree = 0;
  std::map<int, std::int64_t> omegaP;        // p = 2..D
  std::map<std::pair<int, int>, std::int64_t> omegaPQ;
  std::map<int, int> OmegaC;
  std::map<int, int> kappaP;                 // p = 1..D
};

inline DegreeReport degreeReport(const ColoredGraph& G) {
  DegreeReport r;
  r.D = G.D();
  r.k = G.k();
  r.kappa = kappa(G);
  r.kappaMinusK = r.kappa - r.k;
  for (int p = 1; p <= r.D; ++p) r.kappaP[p] = kappaP(G, p);
  if (r.D < 2) return r;
  r.faces = faces(G);
  for (const auto& B : multiColorSubsets(r.D)) r.K[B] = kappaRestrict(G, B) - r.kappa;
  for (const auto& order : jacketOrders(r.D)) r.genus[order] = jacketGenus(G, order);
  for (int p = 2; p <= r.D; ++p) {
    r.omegaP[p] = completeDegreeWeight(r.D, p) * r.kappa +
                  completeDegreeWeight(r.D, p + 1) * r.k - r.kappaP[p];
    ensure(r.omegaP[p] >= 0, "negative p-complete degree");
  }
  r.gurauDegree = r.omegaP[2];
  for (int p = 2; p <= r.D; ++p)
    for (int q = p; q <= r.D; ++q) r.omegaPQ[{p, q}] = omegaPQ(G, p, q);
  for (int c = 1; c <= r.D; ++c)
    r.OmegaC[c] = r.kappa + (r.D - 2) * r.k - r.faces.colorTotal(c);
  return r;
}

// ---------------------------------------------------------------------------
// Compatibility search over an extra color-0 permutation

enum class Exactness { Exact, Bound };

inline const char* toString(Exactness e) { return e == Exactness::Exact ? "EXACT" : "BOUND"; }

struct NuWitness {
  Permutation nu;
  int deltaNu = 0;
  int F0 = 0;
  int totalDistance = 0;                      // sum over colors of d(sigma_c, nu)
  std::map<std::pair<int, int>, int> gromov;  // (i, j) with i < j
};

inline NuWitness evaluateNu(const ColoredGraph& G, const Permutation& nu) {
  const int D = G.D();
  require(nu.degree() == G.k(), "nu has the wrong degree");
  NuWitness w;
  w.nu = nu;
  std::vector<int> dist(D + 1);
  for (int c = 1; c <= D; ++c) {
    dist[c] = cayleyDistance(G.sigma(c), nu);
    w.totalDistance += dist[c];
    w.F0 += G.k() - dist[c];
  }
  for (int i = 1; i <= D; ++i)
    for (int j = i + 1; j <= D; ++j) {
      int twice = dist[i] + dist[j] - cayleyDistance(G.sigma(i), G.sigma(j));
      ensure(twice >= 0 && twice % 2 == 0, "Gromov product is not a non-negative integer");
      w.gromov[{i, j}] = twice / 2;
      w.deltaNu += twice / 2;
    }
  return w;
}

inline int totalDistance(const ColoredGraph& G, const Permutation& nu) {
  int t = 0;
  for (const auto& s : G.sigmas()) t += cayleyDistance(s, nu);
  return t;
}

/// Sum over pairs of colors of their Cayley distance.
inline int pairwiseDistanceSum(const ColoredGraph& G) {
  int t = 0;
  for (int i = 1; i <= G.D(); ++i)
    for (int j = i + 1; j <= G.D(); ++j) t += cayleyDistance(G.sigma(i), G.sigma(j));
  return t;
}

/// Delta for a given minimal total distance: ((D-1) T - sum of pairwise distances) / 2.
inline int deltaFromTotalDistance(const ColoredGraph& G, int T) {
  int twice = (G.D() - 1) * T - pairwiseDistanceSum(G);
  ensure(twice >= 0 && twice % 2 == 0, "degree of compatibility is not a non-negative integer");
  return twice / 2;
}

struct SearchBudget {
  int exhaustiveMaxK = 8;                 // enumerate S_k without pruning up to this size
  std::uint64_t nodeLimit = 200'000'000;  // search-tree nodes before giving up
  std::size_t witnessCap = 4096;          // minimizers kept in the result
};

struct CompatibilityResult {
  Exactness exactness = Exactness::Exact;
  int delta = 0;
  std::uint64_t mu = 0;
  int minTotalDistance = 0;
  std::uint64_t nodes = 0;
  bool exhaustive = false;
  std::vector<NuWitness> witnesses;
};

namespace detail {

// Depth-first assignment of nu^{-1}, one black vertex at a time.  For every color
// the partial permutation nu^{-1} sigma_c is kept as a set of open paths so that a
// closed cycle is detected in constant time.
class NuSearch {
 public:
  explicit NuSearch(const ColoredGraph& G) : G_(G), k_(G.k()), D_(G.D()) {
    sigmaInv_.resize(D_);
    for (int c = 0; c < D_; ++c) sigmaInv_[c] = G.sigma(c + 1).inverse().images();
    startOf_.assign(D_, std::vector<int>(k_));
    endOf_.assign(D_, std::vector<int>(k_));
    for (int c = 0; c < D_; ++c) {
      std::iota(startOf_[c].begin(), startOf_[c].end(), 0);
      std::iota(endOf_[c].begin(), endOf_[c].end(), 0);
    }
    closed_.assign(D_, 0);
    nuInv_.assign(k_, -1);
    usedWhite_.assign(k_, 0);
  }

  std::uint64_t nodes = 0;
  std::uint64_t nodeLimit = std::numeric_limits<std::uint64_t>::max();
  bool aborted = false;

  // Minimization with tie counting.
  int best = std::numeric_limits<int>::max();
  std::uint64_t count = 0;
  std::size_t witnessCap = 0;
  std::vector<std::vector<int>> minimizers;  // nu images
  bool prune = true;

  // Histogram of the total distance over all of S_k.
  std::vector<std::uint64_t> histogram;
  bool histogramMode = false;

  void run() {
    if (histogramMode) histogram.assign(D_ * k_ + 1, 0);
    dfs(0);
  }

 private:
  struct Undo {
    int color, head, oldEnd, tail, oldStart;
    bool closed;
  };

  void dfs(int y) {
    if (aborted) return;
    if (++nodes > nodeLimit) {
      aborted = true;
      return;
    }
    if (y == k_) {
      int T = 0;
      for (int c = 0; c < D_; ++c) T += k_ - closed_[c];
      if (histogramMode) {
        ++histogram[T];
        return;
      }
      if (T < best) {
        best = T;
        count = 0;
        minimizers.clear();
      }
      if (T == best) {
        ++count;
        if (minimizers.size() < witnessCap) {
          std::vector<int> nu(k_);
          for (int b = 0; b < k_; ++b) nu[nuInv_[b]] = b;
          minimizers.push_back(std::move(nu));
        }
      }
      return;
    }
    for (int x = 0; x < k_; ++x) {
      if (usedWhite_[x]) continue;
      Undo undo[16];
      std::vector<Undo> bigUndo;
      Undo* log = undo;
      if (D_ > 16) {
        bigUndo.resize(D_);
        log = bigUndo.data();
      }
      for (int c = 0; c < D_; ++c) log[c] = addArc(c, sigmaInv_[c][y], x);
      usedWhite_[x] = 1;
      nuInv_[y] = x;
      bool descend = true;
      if (prune && !histogramMode) {
        int lb = 0;
        for (int c = 0; c < D_; ++c) lb += (y + 1) - closed_[c];
        descend = lb <= best;
      }
      if (descend) dfs(y + 1);
      nuInv_[y] = -1;
      usedWhite_[x] = 0;
      for (int c = D_ - 1; c >= 0; --c) removeArc(log[c]);
      if (aborted) return;
    }
  }

  Undo addArc(int c, int s, int x) {
    Undo u{c, -1, -1, -1, -1, false};
    int head = startOf_[c][s];
    if (head == x) {
      ++closed_[c];
      u.closed = true;
      return u;
    }
    int tail = endOf_[c][x];
    u.head = head;
    u.oldEnd = endOf_[c][head];
    u.tail = tail;
    u.oldStart = startOf_[c][tail];
    endOf_[c][head] = tail;
    startOf_[c][tail] = head;
    return u;
  }

  void removeArc(const Undo& u) {
    if (u.closed) {
      --closed_[u.color];
      return;
    }
    endOf_[u.color][u.head] = u.oldEnd;
    startOf_[u.color][u.tail] = u.oldStart;
  }

  const ColoredGraph& G_;
  int k_, D_;
  std::vector<std::vector<int>> sigmaInv_;
  std::vector<std::vector<int>> startOf_, endOf_;
  std::vector<int> closed_;
  std::vector<int> nuInv_;
  std::vector<char> usedWhite_;
};

}  // namespace detail

/// Greedy descent on the total distance using transposition moves.
inline Permutation localDescent(const ColoredGraph& G, Permutation nu) {
  const int k = G.k();
  int current = totalDistance(G, nu);
  bool improved = true;
  while (improved) {
    improved = false;
    for (int a = 0; a < k && !improved; ++a)
      for (int b = a + 1; b < k && !improved; ++b) {
        std::vector<int> im = nu.images();
        std::swap(im[a], im[b]);
        Permutation cand(std::move(im));
        int t = totalDistance(G, cand);
        if (t < current) {
          current = t;
          nu = std::move(cand);
          improved = true;
        }
      }
  }
  return nu;
}

inline Permutation descentIncumbent(const ColoredGraph& G) {
  Permutation best = localDescent(G, Permutation::identity(G.k()));
  int bestT = totalDistance(G, best);
  for (const auto& s : G.sigmas()) {
    Permutation cand = localDescent(G, s);
    int t = totalDistance(G, cand);
    if (t < bestT) {
      bestT = t;
      best = cand;
    }
  }
  return best;
}

/// Minimum of Delta_nu over S_k with the number of minimizers.
///
/// Up to budget.exhaustiveMaxK every permutation is visited.  Above it a
/// branch-and-bound prunes subtrees whose admissible bound exceeds the incumbent
/// (ties are still visited so that mu stays exact).  When the node limit is
/// reached the result is a BOUND carrying the best witness found.
inline CompatibilityResult compatibilitySearch(const ColoredGraph& G, const SearchBudget& budget = {}) {
  CompatibilityResult result;
  detail::NuSearch search(G);
  search.nodeLimit = budget.nodeLimit;
  search.witnessCap = budget.witnessCap;
  result.exhaustive = G.k() <= budget.exhaustiveMaxK;
  Permutation incumbent = descentIncumbent(G);
  if (result.exhaustive) {
    search.prune = false;
  } else {
    search.best = totalDistance(G, incumbent);
  }
  search.run();
  result.nodes = search.nodes;
  if (search.aborted || search.minimizers.empty()) {
    result.exactness = Exactness::Bound;
    Permutation bestNu = incumbent;
    if (!search.minimizers.empty() && search.best < totalDistance(G, incumbent))
      bestNu = Permutation(search.minimizers.front());
    result.minTotalDistance = totalDistance(G, bestNu);
    result.delta = deltaFromTotalDistance(G, result.minTotalDistance);
    result.mu = search.best == result.minTotalDistance ? std::max<std::uint64_t>(search.count, 1) : 1;
    result.witnesses.push_back(evaluateNu(G, bestNu));
    return result;
  }
  result.exactness = Exactness::Exact;
  result.minTotalDistance = search.best;
  result.delta = deltaFromTotalDistance(G, search.best);
  result.mu = search.count;
  std::sort(search.minimizers.begin(), search.minimizers.end());
  for (auto& nu : search.minimizers) result.witnesses.push_back(evaluateNu(G, Permutation(nu)));
  return result;
}

/// Number of nu in S_k at each total distance; index t holds #{nu : sum_c d(sigma_c, nu) = t}.
inline std::vector<std::uint64_t> totalDistanceHistogram(const ColoredGraph& G) {
  detail::NuSearch search(G);
  search.histogramMode = true;
  search.prune = false;
  search.run();
  return search.histogram;
}

struct HaarScaling {
  Exactness exactness = Exactness::Exact;
  int s = 0;
  std::uint64_t mu = 0;
  int delta = 0;
};

/// Leading exponent and coefficient of the Haar moment: s = -min_nu sum_c d(sigma_c, nu).
inline HaarScaling haarScaling(const ColoredGraph& G, const SearchBudget& budget = {}) {
  auto r = compatibilitySearch(G, budget);
  HaarScaling h{r.exactness, -r.minTotalDistance, r.mu, r.delta};
  if (G.D() >= 2) {
    // s = F/(D-1) - (D/2) k - 2 Delta/(D-1), multiplied through by 2(D-1).
    const int D = G.D();
    long lhs = 2L * (D - 1) * h.s;
    long rhs = 2L * faces(G).total() - static_cast<long>(D) * (D - 1) * G.k() - 4L * h.delta;
    ensure(lhs == rhs, "Haar scaling disagrees with the 2-complete scaling identity");
  }
  return h;
}

// ---------------------------------------------------------------------------
// Conditional additivity of (Delta, mu) under binary operations

enum class ComposeOp { Union, Flip, VertexContract };

inline const char* toString(ComposeOp op) {
  switch (op) {
    case ComposeOp::Union: return "union";
    case ComposeOp::Flip: return "flip";
    case ComposeOp::VertexContract: return "vertex-contraction";
  }
  return "?";
}

struct CompatibilityValue {
  int delta = 0;
  std::uint64_t mu = 1;
  Exactness exactness = Exactness::Exact;
};

struct ComposeContext {
  ComposeOp op = ComposeOp::Union;
  int flipColor = 1;
  VertexRef v1{}, v2{};
  std::optional<int> resultDeltaUpperBound;  // from a witness on the composed graph
  std::optional<std::string> declaredAssumption;
};

struct ComposeResult {
  bool known = false;
  bool assumed = false;
  int delta = 0;
  std::uint64_t mu = 0;
  std::string justification;
};

/// Length of the bicolored (i, j) cycle through a vertex, counted in vertex pairs.
inline int faceHalfLength(const ColoredGraph& G, int i, int j, VertexRef v) {
  const Permutation rel = G.sigma(i) * G.sigma(j).inverse();  // acts on black vertices
  int start = v.shade == Shade::Black ? v.index : G.sigma(j)(v.index);
  int len = 0;
  int b = start;
  do {
    b = rel(b);
    ++len;
  } while (b != start);
  return len;
}

inline bool onSmallFace(const ColoredGraph& G, VertexRef v) {
  for (int i = 1; i <= G.D(); ++i)
    for (int j = i + 1; j <= G.D(); ++j)
      if (faceHalfLength(G, i, j, v) <= 2) return true;
  return false;
}

inline ComposeResult composeDelta(const ColoredGraph& G1, const CompatibilityValue& c1,
                                  const ColoredGraph& G2, const CompatibilityValue& c2,
                                  const ComposeContext& ctx) {
  require(G1.D() == G2.D(), "composition of graphs with different color counts");
  const int D = G1.D();
  ComposeResult r;
  const int sum = c1.delta + c2.delta;
  auto accept = [&](std::string why) {
    r.known = true;
    r.delta = sum;
    r.mu = c1.mu * c2.mu;
    r.justification = std::move(why);
  };
  auto fallback = [&](std::string failed) {
    if (ctx.declaredAssumption) {
      accept("assumed: " + *ctx.declaredAssumption + " (" + failed + ")");
      r.assumed = true;
    } else {
      r.justification = "unknown: " + failed;
    }
  };
  if (c1.exactness != Exactness::Exact || c2.exactness != Exactness::Exact) {
    fallback("operand values are bounds");
    return r;
  }
  int effective = sum;
  if (ctx.resultDeltaUpperBound) effective = std::min(effective, *ctx.resultDeltaUpperBound);
  switch (ctx.op) {
    case ComposeOp::Union: {
      const int threshold = D * (D - 1) / 2;
      if (effective < threshold)
        accept("condition 3: " + std::to_string(effective) + " < " + std::to_string(threshold));
      else
        fallback("condition 3 fails: " + std::to_string(effective) + " >= " + std::to_string(threshold));
      break;
    }
    case ComposeOp::Flip: {
      const int threshold = (D - 1) * (D - 2) / 2;
      if (effective < threshold)
        accept("condition 4: " + std::to_string(effective) + " < " + std::to_string(threshold));
      else
        fallback("condition 4 fails: " + std::to_string(effective) + " >= " + std::to_string(threshold));
      break;
    }
    case ComposeOp::VertexContract: {
      if (c1.delta != 0 || c2.delta != 0) {
        fallback("condition 5 needs both operands compatible");
      } else if (onSmallFace(G1, ctx.v1) || onSmallFace(G2, ctx.v2)) {
        accept("condition 5: compatible operands, contraction vertex on a face of size <= 4");
      } else {
        fallback("condition 5 fails: no face of size <= 4 at either contraction vertex");
      }
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Degree thresholds

/// Least k with k! >= D, the smallest degree of a genuinely D-partite graph.
inline int kMin(int D) {
  require(D >= 2, "kMin needs D >= 2");
  std::int64_t f = 1;
  int k = 1;
  while (f < D) f *= ++k;
  return k;
}

/// Degree bound below which trace-invariants separate LU orbits for the given local dimensions.
inline BigInt kMaxBound(const std::vector<int>& dims) {
  require(!dims.empty(), "kMaxBound needs at least one local dimension");
  BigInt prod = 1;
  int maxDim = 0;
  unsigned delta = 0;
  for (int d : dims) {
    require(d >= 1, "local dimensions must be positive");
    prod *= d;
    maxDim = std::max(maxDim, d);
    delta += static_cast<unsigned>(d - 1);
  }
  const BigInt D2 = 2 * static_cast<int>(dims.size());
  BigInt numerator = 3 * BigInt(maxDim) * bigPow(prod, 4) * bigPow(D2, 2 * delta);
  BigInt value = (numerator + 7) / 8;
  return value < 2 ? BigInt(2) : value;
}

}  // namespace trinv
