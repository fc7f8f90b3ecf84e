#pragma once

#include "trinv/permutation.hpp"

#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace trinv {

/// A D-colored bipartite graph with k white and k black vertices.
///
/// sigma(c)(s) is the black vertex joined to white vertex s by the edge of
/// color c.  Colors are 1-based, vertices 0-based.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  explicit ColoredGraph(std::vector<Permutation> sigma) : sigma_(std::move(sigma)) {
    require(!sigma_.empty(), "a colored graph needs at least one color");
    const int k = sigma_.front().degree();
    require(k >= 1, "a colored graph needs at least one white vertex");
    for (std::size_t c = 0; c < sigma_.size(); ++c)
      require(sigma_[c].degree() == k, "color " + std::to_string(c + 1) + " has degree " +
                                           std::to_string(sigma_[c].degree()) + ", expected " +
                                           std::to_string(k));
  }

  static ColoredGraph trivial(int D, int k) {
    return ColoredGraph(std::vector<Permutation>(D, Permutation::identity(k)));
  }

  int D() const { return static_cast<int>(sigma_.size()); }
  int k() const { return sigma_.front().degree(); }
  const Permutation& sigma(int color) const { return sigma_.at(color - 1); }
  const std::vector<Permutation>& sigmas() const { return sigma_; }

  bool operator==(const ColoredGraph&) const = default;
  auto operator<=>(const ColoredGraph& o) const { return sigma_ <=> o.sigma_; }

  std::string toString() const {
    std::ostringstream os;
    os << "D=" << D() << " k=" << k() << " [";
    for (int c = 1; c <= D(); ++c) os << (c > 1 ? ", " : "") << sigma(c).toCycleString();
    os << "]";
    return os.str();
  }

 private:
  std::vector<Permutation> sigma_;
};

// ---------------------------------------------------------------------------
// Connectivity

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  int components;
  explicit UnionFind(int n) : parent(n), components(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
};

// Vertices 0..k-1 are white, k..2k-1 are black.
inline UnionFind componentsOver(const ColoredGraph& G, const ColorSet& colors) {
  const int k = G.k();
  UnionFind uf(2 * k);
  for (int c : colors)
    for (int s = 0; s < k; ++s) uf.unite(s, k + G.sigma(c)(s));
  return uf;
}

}  // namespace detail

inline ColoredGraph restrict(const ColoredGraph& G, const ColorSet& B) {
  require(!B.empty(), "restriction to an empty color set");
  std::vector<Permutation> out;
  for (int c : normalizeColorSet(B)) {
    require(c >= 1 && c <= G.D(), "color " + std::to_string(c) + " outside 1.." + std::to_string(G.D()));
    out.push_back(G.sigma(c));
  }
  return ColoredGraph(std::move(out));
}

/// Number of connected components of G restricted to the colors in B.
inline int kappaRestrict(const ColoredGraph& G, const ColorSet& B) {
  require(!B.empty(), "restriction to an empty color set");
  for (int c : B) require(c >= 1 && c <= G.D(), "color " + std::to_string(c) + " out of range");
  return detail::componentsOver(G, B).components;
}

inline int kappa(const ColoredGraph& G) { return kappaRestrict(G, fullColorSet(G.D())); }

/// Connected components as lists of white vertices.
inline std::vector<std::vector<int>> componentWhites(const ColoredGraph& G) {
  auto uf = detail::componentsOver(G, fullColorSet(G.D()));
  std::map<int, std::vector<int>> groups;
  for (int s = 0; s < G.k(); ++s) groups[uf.find(s)].push_back(s);
  std::vector<std::vector<int>> out;
  for (auto& [root, whites] : groups) out.push_back(std::move(whites));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Faces

struct FaceTable {
  int D = 0;
  std::vector<std::vector<int>> F;  // 1-based, symmetric, zero diagonal

  int at(int i, int j) const { return F[i][j]; }
  int colorTotal(int c) const {
    int t = 0;
    for (int j = 1; j <= D; ++j)
      if (j != c) t += F[c][j];
    return t;
  }
  int total() const {
    int t = 0;
    for (int i = 1; i <= D; ++i)
      for (int j = i + 1; j <= D; ++j) t += F[i][j];
    return t;
  }
};

inline FaceTable faces(const ColoredGraph& G) {
  require(G.D() >= 2, "faces need at least two colors");
  FaceTable t;
  t.D = G.D();
  t.F.assign(G.D() + 1, std::vector<int>(G.D() + 1, 0));
  for (int i = 1; i <= G.D(); ++i)
    for (int j = i + 1; j <= G.D(); ++j)
      t.F[i][j] = t.F[j][i] = relativeCycleCount(G.sigma(i), G.sigma(j));
  return t;
}

// ---------------------------------------------------------------------------
// Relabeling, conjugation, canonical form

/// Applies sigma_c -> eta * sigma_c * nu for every color.
inline ColoredGraph relabel(const ColoredGraph& G, const Permutation& eta, const Permutation& nu) {
  std::vector<Permutation> out;
  for (const auto& s : G.sigmas()) out.push_back(eta * s * nu);
  return ColoredGraph(std::move(out));
}

/// The graph with white and black vertices exchanged.
inline ColoredGraph conjugateGraph(const ColoredGraph& G) {
  std::vector<Permutation> out;
  for (const auto& s : G.sigmas()) out.push_back(s.inverse());
  return ColoredGraph(std::move(out));
}

namespace detail {

inline constexpr int kCanonicalBruteForceMaxK = 8;

// Canonical tuple under simultaneous conjugation, by exhaustive relabeling.
inline std::vector<Permutation> minimalConjugateTuple(const std::vector<Permutation>& rho, int k) {
  std::vector<int> r(k);
  std::iota(r.begin(), r.end(), 0);
  std::vector<int> best;
  std::vector<int> code(rho.size() * k);
  bool first = true;
  do {
    // Code of the conjugated tuple, compared lazily.
    bool better = first;
    bool decided = first;
    std::size_t pos = 0;
    for (const auto& p : rho) {
      std::vector<int> im(k);
      for (int x = 0; x < k; ++x) im[r[x]] = r[p(x)];
      for (int x = 0; x < k; ++x, ++pos) {
        code[pos] = im[x];
        if (!decided && code[pos] != best[pos]) {
          decided = true;
          better = code[pos] < best[pos];
        }
      }
      if (decided && !better) break;
    }
    if (better) {
      best = code;
      first = false;
    }
  } while (std::next_permutation(r.begin(), r.end()));
  std::vector<Permutation> out;
  for (std::size_t c = 0; c < rho.size(); ++c)
    out.emplace_back(std::vector<int>(best.begin() + c * k, best.begin() + (c + 1) * k));
  return out;
}

// Canonical tuple under simultaneous conjugation, by breadth-first labeling of each orbit.
inline std::vector<Permutation> bfsCanonicalTuple(const std::vector<Permutation>& rho, int k) {
  // Orbits of the group generated by rho.
  UnionFind uf(k);
  for (const auto& p : rho)
    for (int x = 0; x < k; ++x) uf.unite(x, p(x));
  std::map<int, std::vector<int>> orbits;
  for (int x = 0; x < k; ++x) orbits[uf.find(x)].push_back(x);

  std::vector<std::vector<int>> codes;
  for (auto& [root, pts] : orbits) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> bestCode;
    for (int start : pts) {
      std::vector<int> label(k, -1);
      std::vector<int> order;
      order.reserve(n);
      label[start] = 0;
      order.push_back(start);
      for (std::size_t head = 0; head < order.size(); ++head) {
        int y = order[head];
        for (const auto& p : rho) {
          int z = p(y);
          if (label[z] < 0) {
            label[z] = static_cast<int>(order.size());
            order.push_back(z);
          }
        }
      }
      std::vector<int> code;
      code.reserve(rho.size() * n);
      for (const auto& p : rho)
        for (int i = 0; i < n; ++i) code.push_back(label[p(order[i])]);
      if (bestCode.empty() || code < bestCode) bestCode = std::move(code);
    }
    std::vector<int> tagged;
    tagged.push_back(n);
    tagged.insert(tagged.end(), bestCode.begin(), bestCode.end());
    codes.push_back(std::move(tagged));
  }
  std::sort(codes.begin(), codes.end());

  std::vector<std::vector<int>> images(rho.size(), std::vector<int>(k));
  int offset = 0;
  for (const auto& code : codes) {
    const int n = code[0];
    for (std::size_t c = 0; c < rho.size(); ++c)
      for (int i = 0; i < n; ++i) images[c][offset + i] = offset + code[1 + c * n + i];
    offset += n;
  }
  std::vector<Permutation> out;
  for (auto& im : images) out.emplace_back(std::move(im));
  return out;
}

}  // namespace detail

/// Canonical representative of the orbit of G under sigma_c -> eta sigma_c nu.
///
/// The first color is brought to the identity; the remaining colors are then
/// canonical under simultaneous conjugation.  For k <= 8 the lexicographically
/// least tuple over all relabelings is returned; above that, a breadth-first
/// orbit labeling gives an equally exact but cheaper representative.
inline ColoredGraph canonicalForm(const ColoredGraph& G) {
  const int k = G.k();
  const Permutation first_inv = G.sigma(1).inverse();
  std::vector<Permutation> rho;
  for (int c = 2; c <= G.D(); ++c) rho.push_back(first_inv * G.sigma(c));
  std::vector<Permutation> out{Permutation::identity(k)};
  if (!rho.empty()) {
    auto canon = k <= detail::kCanonicalBruteForceMaxK ? detail::minimalConjugateTuple(rho, k)
                                                       : detail::bfsCanonicalTuple(rho, k);
    out.insert(out.end(), canon.begin(), canon.end());
  }
  return ColoredGraph(std::move(out));
}

inline bool isIsomorphic(const ColoredGraph& G, const ColoredGraph& H) {
  if (G.D() != H.D() || G.k() != H.k()) return false;
  return canonicalForm(G) == canonicalForm(H);
}

/// Applies a permutation of the colors: color c of the result is color perm[c-1] of G.
inline ColoredGraph permuteColors(const ColoredGraph& G, const std::vector<int>& perm) {
  require(static_cast<int>(perm.size()) == G.D(), "color permutation has wrong length");
  std::vector<Permutation> out;
  for (int c : perm) out.push_back(G.sigma(c));
  return ColoredGraph(std::move(out));
}

// ---------------------------------------------------------------------------
// Edge surgery

enum class Shade { White, Black };

struct VertexRef {
  Shade shade = Shade::White;
  int index = 0;
};

struct EdgeRef {
  int color = 1;
  int white = 0;
};

namespace detail {

// Removes white w and black b, reconnecting each color's dangling half-edges.
inline ColoredGraph removeWhiteBlackPair(const ColoredGraph& G, int w, int b) {
  const int k = G.k();
  require(k >= 2, "cannot remove the only vertex pair of a graph");
  std::vector<int> whiteMap(k, -1), blackMap(k, -1);
  for (int s = 0, n = 0; s < k; ++s)
    if (s != w) whiteMap[s] = n++;
  for (int t = 0, n = 0; t < k; ++t)
    if (t != b) blackMap[t] = n++;
  std::vector<Permutation> out;
  for (const auto& sigma : G.sigmas()) {
    std::vector<int> im(k - 1);
    for (int s = 0; s < k; ++s) {
      if (s == w) continue;
      int t = sigma(s);
      if (t == b) t = sigma(w);
      im[whiteMap[s]] = blackMap[t];
    }
    out.emplace_back(std::move(im));
  }
  return ColoredGraph(std::move(out));
}

}  // namespace detail

inline ColoredGraph disjointUnion(const ColoredGraph& G1, const ColoredGraph& G2) {
  require(G1.D() == G2.D(), "union of graphs with different color counts");
  const int k1 = G1.k(), k2 = G2.k();
  std::vector<Permutation> out;
  for (int c = 1; c <= G1.D(); ++c) {
    std::vector<int> im(k1 + k2);
    for (int s = 0; s < k1; ++s) im[s] = G1.sigma(c)(s);
    for (int s = 0; s < k2; ++s) im[k1 + s] = k1 + G2.sigma(c)(s);
    out.emplace_back(std::move(im));
  }
  return ColoredGraph(std::move(out));
}

/// Cuts one edge of color c in each graph and reconnects the half-edges crosswise.
inline ColoredGraph flip(const ColoredGraph& G1, EdgeRef e1, const ColoredGraph& G2, EdgeRef e2) {
  require(G1.D() == G2.D(), "flip between graphs with different color counts");
  require(e1.color == e2.color, "flip edges must share a color (got " + std::to_string(e1.color) +
                                    " and " + std::to_string(e2.color) + ")");
  require(e1.color >= 1 && e1.color <= G1.D(), "flip color out of range");
  require(e1.white >= 0 && e1.white < G1.k(), "flip edge of the first graph out of range");
  require(e2.white >= 0 && e2.white < G2.k(), "flip edge of the second graph out of range");
  ColoredGraph U = disjointUnion(G1, G2);
  std::vector<Permutation> out = U.sigmas();
  std::vector<int> im = out[e1.color - 1].images();
  const int w1 = e1.white, w2 = G1.k() + e2.white;
  std::swap(im[w1], im[w2]);
  out[e1.color - 1] = Permutation(std::move(im));
  return ColoredGraph(std::move(out));
}

/// Removes a white vertex of one graph and a black vertex of the other and
/// joins their dangling half-edges color by color.
inline ColoredGraph vertexContract(const ColoredGraph& G1, VertexRef v1, const ColoredGraph& G2,
                                   VertexRef v2) {
  require(G1.D() == G2.D(), "contraction of graphs with different color counts");
  require(v1.shade != v2.shade, "contraction vertices must have opposite shades");
  require(v1.index >= 0 && v1.index < G1.k(), "contraction vertex of the first graph out of range");
  require(v2.index >= 0 && v2.index < G2.k(), "contraction vertex of the second graph out of range");
  ColoredGraph U = disjointUnion(G1, G2);
  const int k1 = G1.k();
  int w = v1.shade == Shade::White ? v1.index : k1 + v2.index;
  int b = v1.shade == Shade::Black ? v1.index : k1 + v2.index;
  return detail::removeWhiteBlackPair(U, w, b);
}

/// Edges (color, white) whose endpoints lie in different components once that color is removed.
inline std::vector<EdgeRef> findOneDipoles(const ColoredGraph& G) {
  std::vector<EdgeRef> out;
  const int k = G.k();
  for (int c = 1; c <= G.D(); ++c) {
    ColorSet others;
    for (int j = 1; j <= G.D(); ++j)
      if (j != c) others.push_back(j);
    detail::UnionFind uf(2 * k);
    if (!others.empty()) uf = detail::componentsOver(G, others);
    for (int s = 0; s < k; ++s)
      if (uf.find(s) != uf.find(k + G.sigma(c)(s))) out.push_back({c, s});
  }
  return out;
}

inline bool isOneDipole(const ColoredGraph& G, EdgeRef e) {
  for (const auto& d : findOneDipoles(G))
    if (d.color == e.color && d.white == e.white) return true;
  return false;
}

inline ColoredGraph contractEdge(const ColoredGraph& G, EdgeRef e) {
  require(e.color >= 1 && e.color <= G.D() && e.white >= 0 && e.white < G.k(), "edge out of range");
  return detail::removeWhiteBlackPair(G, e.white, G.sigma(e.color)(e.white));
}

inline ColoredGraph oneDipoleContract(const ColoredGraph& G, EdgeRef e) {
  require(isOneDipole(G, e), "edge (color " + std::to_string(e.color) + ", white " +
                                 std::to_string(e.white + 1) + ") is not a 1-dipole");
  return contractEdge(G, e);
}

/// Melonic insertion on the bundle of colors `bundle` leaving white w.
///
/// A new black y and white x are placed on the bundle: w joins y and x joins the
/// old endpoint through the bundle colors, while y and x are joined by every other color.
inline ColoredGraph insertMelon(const ColoredGraph& G, ColorSet bundle, int w) {
  bundle = normalizeColorSet(std::move(bundle));
  require(!bundle.empty(), "melonic insertion needs at least one bundle color");
  require(w >= 0 && w < G.k(), "melonic insertion vertex out of range");
  const int target = G.sigma(bundle.front())(w);
  for (int c : bundle) {
    require(c >= 1 && c <= G.D(), "bundle color out of range");
    require(G.sigma(c)(w) == target, "bundle colors are not parallel at the insertion vertex");
  }
  const int k = G.k();
  std::vector<Permutation> out;
  for (int c = 1; c <= G.D(); ++c) {
    std::vector<int> im = G.sigma(c).images();
    im.push_back(k);
    if (std::binary_search(bundle.begin(), bundle.end(), c)) {
      im[k] = im[w];
      im[w] = k;
    }
    out.emplace_back(std::move(im));
  }
  return ColoredGraph(std::move(out));
}

// ---------------------------------------------------------------------------
// Coarse-graining

using ColorPartition = std::vector<ColorSet>;

inline void validatePartition(const ColorPartition& zeta, int D) {
  std::vector<int> count(D + 1, 0);
  for (const auto& block : zeta) {
    require(!block.empty(), "empty block in color partition");
    for (int c : block) {
      require(c >= 1 && c <= D, "partition color " + std::to_string(c) + " out of range");
      ++count[c];
    }
  }
  for (int c = 1; c <= D; ++c)
    require(count[c] == 1, "color " + std::to_string(c) + " is not covered exactly once");
}

/// Copies color c' of a coarse graph onto every color of block c' of zeta.
inline ColoredGraph coarseGrainGraph(const ColoredGraph& coarse, const ColorPartition& zeta) {
  require(static_cast<int>(zeta.size()) == coarse.D(),
          "partition has " + std::to_string(zeta.size()) + " blocks, graph has " +
              std::to_string(coarse.D()) + " colors");
  int D = 0;
  for (const auto& b : zeta) D += static_cast<int>(b.size());
  validatePartition(zeta, D);
  std::vector<Permutation> out(D);
  for (std::size_t b = 0; b < zeta.size(); ++b)
    for (int c : zeta[b]) out[c - 1] = coarse.sigma(static_cast<int>(b) + 1);
  return ColoredGraph(std::move(out));
}

inline bool membershipInPartitionClass(const ColoredGraph& G, const ColorPartition& zeta) {
  validatePartition(zeta, G.D());
  for (const auto& block : zeta)
    for (int c : block)
      if (G.sigma(c) != G.sigma(block.front())) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Structural classification

struct Classification {
  bool trivial = false;
  bool cyclic = false;
  bool genuinelyDPartite = false;
  int numDistinctColors = 0;
  bool melonic = false;
  ColorSet cMelonicColors;
  std::vector<ColorSet> bMelonicMaximalSets;
  bool maximallySingleTrace = false;
  bool hasDoubleSize2FaceVertex = false;
};

/// Removes (D-1)-dipoles until none is left.
inline ColoredGraph reduceDipoles(ColoredGraph G) {
  const int D = G.D();
  if (D < 2) return G;
  bool changed = true;
  while (changed && G.k() > 1) {
    changed = false;
    for (int s = 0; s < G.k() && !changed; ++s) {
      std::map<int, int> targets;
      for (int c = 1; c <= D; ++c) ++targets[G.sigma(c)(s)];
      for (auto [b, mult] : targets) {
        if (mult == D - 1) {
          int parallel = 1;
          while (G.sigma(parallel)(s) != b) ++parallel;
          G = contractEdge(G, {parallel, s});
          changed = true;
          break;
        }
      }
    }
  }
  return G;
}

inline bool isMelonic(const ColoredGraph& G) {
  if (G.D() == 1) return true;
  ColoredGraph R = reduceDipoles(G);
  for (int s = 0; s < R.k(); ++s)
    for (int c = 2; c <= R.D(); ++c)
      if (R.sigma(c)(s) != R.sigma(1)(s)) return false;
  return true;
}

inline bool hasDoubleSize2FaceVertex(const ColoredGraph& G) {
  const int D = G.D();
  auto check = [&](const std::vector<Permutation>& sig) {
    const int k = sig.front().degree();
    for (int s = 0; s < k; ++s) {
      // Partners reached by at least two colors form faces of size two.
      std::map<int, int> mult;
      for (int c = 0; c < D; ++c) ++mult[sig[c](s)];
      int doubled = 0;
      for (auto [b, m] : mult)
        if (m >= 2) ++doubled;
      if (doubled >= 2) return true;
    }
    return false;
  };
  std::vector<Permutation> inv;
  for (const auto& s : G.sigmas()) inv.push_back(s.inverse());
  return check(G.sigmas()) || check(inv);
}

inline Classification classify(const ColoredGraph& G) {
  Classification r;
  const int D = G.D();
  std::set<Permutation> distinct(G.sigmas().begin(), G.sigmas().end());
  r.numDistinctColors = static_cast<int>(distinct.size());
  r.trivial = r.numDistinctColors == 1;
  r.cyclic = r.numDistinctColors <= 2;
  r.genuinelyDPartite = r.numDistinctColors == D;
  r.melonic = isMelonic(G);
  const bool connected = kappa(G) == 1;
  if (D >= 2) {
    auto F = faces(G);
    r.maximallySingleTrace = connected;
    for (int i = 1; i <= D; ++i)
      for (int j = i + 1; j <= D; ++j)
        if (F.at(i, j) != 1) r.maximallySingleTrace = false;
  }
  if (r.melonic && D >= 2) {
    for (int c = 1; c <= D; ++c) {
      ColorSet others;
      for (int j = 1; j <= D; ++j)
        if (j != c) others.push_back(j);
      if (kappaRestrict(G, others) == kappa(G)) r.cMelonicColors.push_back(c);
    }
    // B-melonic: the graph restricted to the complement of B keeps the components of G.
    std::vector<ColorSet> melonicSets;
    for (int size = 1; size < D; ++size)
      for (const auto& B : subsetsOfSize(D, size))
        if (kappaRestrict(G, complementColorSet(B, D)) == kappa(G)) melonicSets.push_back(B);
    for (const auto& B : melonicSets) {
      bool maximal = true;
      for (const auto& other : melonicSets)
        if (other.size() > B.size() && isSubset(B, other)) maximal = false;
      if (maximal) r.bMelonicMaximalSets.push_back(B);
    }
  }
  r.hasDoubleSize2FaceVertex = hasDoubleSize2FaceVertex(G);
  return r;
}

}  // namespace trinv
