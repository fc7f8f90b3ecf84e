#pragma once

#include "trinv/degrees.hpp"

#include <fmt/format.h>

#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <variant>

namespace trinv {

// ---------------------------------------------------------------------------
// Family specifications

namespace spec {

struct Melon { int D = 3; };
struct Cycle { int k = 2; };
struct CyclicBipartition { int D = 3; int k = 2; ColorSet moving{1}; };
struct MelonicScript { int D = 3; std::vector<EdgeRef> insertions; };
struct PT { int D = 3; int k = 3; ColorSet forward{1}; ColorSet backward{2}; };
struct RM { int D = 3; int k = 4; ColorSet first{1}; ColorSet second{2}; };
struct JRM { int D = 3; std::vector<int> sequence; };
struct Lattice { int D = 4; int m = 1; int n = 1; std::vector<int> sequence; int cut = 1; ColorSet traced; };
struct ME { int n = 2; int D = 3; };
struct RME { int m = 2; int n = 2; ColorSet traced{3}; int D = 3; };
struct CompleteBipartite { int D = 3; };
struct CompleteGraph { int D = 4; };
struct MirrorDoubleMST;

}  // namespace spec

using FamilySpec =
    std::variant<spec::Melon, spec::Cycle, spec::CyclicBipartition, spec::MelonicScript, spec::PT,
                 spec::RM, spec::JRM, spec::Lattice, spec::ME, spec::RME, spec::CompleteBipartite,
                 spec::CompleteGraph, std::shared_ptr<spec::MirrorDoubleMST>>;

namespace spec {
struct MirrorDoubleMST {
  FamilySpec seed;
  int vertex = 0;
};
}  // namespace spec

inline FamilySpec mirrorDoubleMST(FamilySpec seed, int vertex = 0) {
  return std::make_shared<spec::MirrorDoubleMST>(spec::MirrorDoubleMST{std::move(seed), vertex});
}

// ---------------------------------------------------------------------------
// Generators

inline ColoredGraph melon(int D) { return ColoredGraph::trivial(D, 1); }

/// C_k: two colors, one carrying the long cycle.
inline ColoredGraph cycleGraph(int k) {
  require(k >= 1, "cycle graph needs k >= 1");
  return ColoredGraph({Permutation::longCycle(k), Permutation::identity(k)});
}

inline ColoredGraph cyclicBipartition(int D, int k, const ColorSet& moving) {
  require(k >= 1, "cyclic graph needs k >= 1");
  std::vector<Permutation> sig(D, Permutation::identity(k));
  for (int c : moving) {
    require(c >= 1 && c <= D, "cyclic block color out of range");
    sig[c - 1] = Permutation::longCycle(k);
  }
  return ColoredGraph(std::move(sig));
}

/// Builds a melonic graph from the 2-vertex graph by insertions on (color, white) edges.
inline ColoredGraph melonicFromScript(int D, const std::vector<EdgeRef>& insertions) {
  ColoredGraph G = melon(D);
  for (std::size_t i = 0; i < insertions.size(); ++i) {
    const auto& e = insertions[i];
    require(e.color >= 1 && e.color <= D && e.white >= 0 && e.white < G.k(),
            "melonic insertion " + std::to_string(i + 1) + " addresses a missing edge");
    G = insertMelon(G, {e.color}, e.white);
  }
  return G;
}

/// Partial-transpose moment: colors in `forward` carry the long cycle, `backward` its inverse.
inline ColoredGraph partialTranspose(int D, int k, const ColorSet& forward, const ColorSet& backward) {
  require(k >= 1, "PT needs k >= 1");
  const Permutation tau = Permutation::longCycle(k);
  std::vector<Permutation> sig(D, Permutation::identity(k));
  for (int c : forward) sig.at(c - 1) = tau;
  for (int c : backward) {
    require(!std::binary_search(forward.begin(), forward.end(), c), "PT blocks overlap");
    sig.at(c - 1) = tau.inverse();
  }
  return ColoredGraph(std::move(sig));
}

/// Realignment moment on k = 2n white vertices.
inline ColoredGraph realignment(int D, int k, const ColorSet& first, const ColorSet& second) {
  require(k >= 2 && k % 2 == 0, "RM needs an even k >= 2");
  std::vector<int> a(k), b(k);
  for (int s = 0; s < k; ++s) {
    // 1-based odd points sit at even 0-based positions.
    const bool odd = s % 2 == 0;
    a[s] = odd ? (s - 1 + k) % k : (s + 1) % k;
    b[s] = odd ? s + 1 : s - 1;
  }
  std::vector<Permutation> sig(D, Permutation::identity(k));
  for (int c : first) sig.at(c - 1) = Permutation(a);
  for (int c : second) {
    require(!std::binary_search(first.begin(), first.end(), c), "RM blocks overlap");
    sig.at(c - 1) = Permutation(b);
  }
  return ColoredGraph(std::move(sig));
}

/// Joint realignment moment: consecutive factors share the color in `sequence`.
inline ColoredGraph jointRealignment(int D, const std::vector<int>& sequence) {
  const int l = static_cast<int>(sequence.size());
  require(l >= 2, "JRM needs a color sequence of length >= 2");
  for (int j = 0; j < l; ++j) {
    require(sequence[j] >= 1 && sequence[j] <= D, "JRM color out of range");
    require(sequence[j] != sequence[(j + 1) % l], "JRM sequence repeats a color cyclically");
  }
  std::vector<Permutation> sig;
  for (int c = 1; c <= D; ++c) {
    std::vector<int> im(l);
    for (int j = 0; j < l; ++j) {
      if (sequence[j] == c)
        im[j] = (j - 1 + l) % l;
      else if (sequence[(j + 1) % l] == c)
        im[j] = (j + 1) % l;
      else
        im[j] = j;
    }
    sig.emplace_back(std::move(im));
  }
  return ColoredGraph(std::move(sig));
}

/// Multi-entropy graph: white vertices are points of (Z_n)^{D-1}, coordinate 1 fastest.
inline ColoredGraph multiEntropy(int n, int D) {
  require(n >= 1 && D >= 2, "ME needs n >= 1 and D >= 2");
  int k = 1;
  for (int i = 0; i < D - 1; ++i) k *= n;
  std::vector<Permutation> sig;
  int stride = 1;
  for (int c = 1; c < D; ++c, stride *= n) {
    std::vector<int> im(k);
    for (int s = 0; s < k; ++s) {
      int digit = (s / stride) % n;
      im[s] = s - digit * stride + ((digit + 1) % n) * stride;
    }
    sig.emplace_back(std::move(im));
  }
  sig.push_back(Permutation::identity(k));
  return ColoredGraph(std::move(sig));
}

/// Two mirrored copies of ME_n on the untraced colors, joined by the traced colors,
/// with (m-2)/2 melons inserted on every traced bundle.
inline ColoredGraph reflectedMultiEntropy(int m, int n, const ColorSet& traced, int D) {
  require(m >= 2 && m % 2 == 0, "RME needs an even m >= 2");
  require(!traced.empty(), "RME needs at least one traced color");
  const ColorSet kept = complementColorSet(normalizeColorSet(traced), D);
  require(kept.size() >= 2, "RME needs at least two untraced colors");
  const ColoredGraph base = multiEntropy(n, static_cast<int>(kept.size()));
  const int K = base.k();
  std::vector<Permutation> sig(D);
  for (std::size_t pos = 0; pos < kept.size(); ++pos) {
    const Permutation& shift = base.sigma(static_cast<int>(pos) + 1);
    const Permutation back = shift.inverse();
    std::vector<int> im(2 * K);
    for (int x = 0; x < K; ++x) {
      im[x] = shift(x);
      im[K + x] = K + back(x);
    }
    sig[kept[pos] - 1] = Permutation(std::move(im));
  }
  std::vector<int> swap(2 * K);
  for (int x = 0; x < K; ++x) {
    swap[x] = K + x;
    swap[K + x] = x;
  }
  for (int c : normalizeColorSet(traced)) sig.at(c - 1) = Permutation(swap);
  ColoredGraph G(std::move(sig));
  const ColorSet bundle = normalizeColorSet(traced);
  for (int w = 0; w < 2 * K; ++w)
    for (int rep = 0; rep < (m - 2) / 2; ++rep) G = insertMelon(G, bundle, w);
  return G;
}

/// Torus lattice: the joint realignment of `sequence` repeated m times along the cut
/// color, stacked in n layers that the traced colors shift cyclically.
inline ColoredGraph latticeGraph(int D, int m, int n, const std::vector<int>& sequence, int cut,
                                 const ColorSet& traced) {
  require(m >= 1 && n >= 1, "lattice needs m, n >= 1");
  const ColorSet bar = normalizeColorSet(traced);
  const ColorSet kept = complementColorSet(bar, D);
  require(std::find(sequence.begin(), sequence.end(), cut) != sequence.end(),
          "lattice cut color does not occur in the sequence");
  for (int c : sequence)
    require(std::binary_search(kept.begin(), kept.end(), c), "lattice sequence uses a traced color");
  for (int c : kept)
    require(std::find(sequence.begin(), sequence.end(), c) != sequence.end(),
            "lattice sequence misses untraced color " + std::to_string(c));
  std::vector<int> repeated;
  for (int r = 0; r < m; ++r) repeated.insert(repeated.end(), sequence.begin(), sequence.end());
  const ColoredGraph ring = jointRealignment(D, repeated);
  const int L = ring.k();
  const int k = L * n;
  std::vector<Permutation> sig;
  for (int c = 1; c <= D; ++c) {
    std::vector<int> im(k);
    const bool isTraced = std::binary_search(bar.begin(), bar.end(), c);
    for (int t = 0; t < n; ++t)
      for (int J = 0; J < L; ++J)
        im[t * L + J] = isTraced ? ((t + 1) % n) * L + J : t * L + ring.sigma(c)(J);
    sig.emplace_back(std::move(im));
  }
  ColoredGraph G(std::move(sig));
  ensure(G.k() == static_cast<int>(sequence.size()) * m * n, "lattice vertex count mismatch");
  return G;
}

inline ColoredGraph completeGraph(int D) {
  require(D >= 2, "complete bipartite graph needs D >= 2");
  const Permutation tau = Permutation::longCycle(D);
  std::vector<Permutation> sig;
  for (int c = 0; c < D; ++c) sig.push_back(power(tau, c));
  return ColoredGraph(std::move(sig));
}

inline bool isMaximallySingleTrace(const ColoredGraph& G) {
  if (kappa(G) != 1 || G.D() < 2) return false;
  auto F = faces(G);
  for (int i = 1; i <= G.D(); ++i)
    for (int j = i + 1; j <= G.D(); ++j)
      if (F.at(i, j) != 1) return false;
  return true;
}

inline ColoredGraph mirrorDouble(const ColoredGraph& M, int vertex) {
  return vertexContract(M, {Shade::White, vertex}, conjugateGraph(M), {Shade::Black, vertex});
}

inline ColoredGraph generate(const FamilySpec& spec) {
  struct Visitor {
    ColoredGraph operator()(const spec::Melon& s) const { return melon(s.D); }
    ColoredGraph operator()(const spec::Cycle& s) const { return cycleGraph(s.k); }
    ColoredGraph operator()(const spec::CyclicBipartition& s) const {
      return cyclicBipartition(s.D, s.k, s.moving);
    }
    ColoredGraph operator()(const spec::MelonicScript& s) const {
      return melonicFromScript(s.D, s.insertions);
    }
    ColoredGraph operator()(const spec::PT& s) const {
      return partialTranspose(s.D, s.k, s.forward, s.backward);
    }
    ColoredGraph operator()(const spec::RM& s) const { return realignment(s.D, s.k, s.first, s.second); }
    ColoredGraph operator()(const spec::JRM& s) const { return jointRealignment(s.D, s.sequence); }
    ColoredGraph operator()(const spec::Lattice& s) const {
      return latticeGraph(s.D, s.m, s.n, s.sequence, s.cut, s.traced);
    }
    ColoredGraph operator()(const spec::ME& s) const { return multiEntropy(s.n, s.D); }
    ColoredGraph operator()(const spec::RME& s) const {
      return reflectedMultiEntropy(s.m, s.n, s.traced, s.D);
    }
    ColoredGraph operator()(const spec::CompleteBipartite& s) const {
      ColoredGraph G = completeGraph(s.D);
      require(isMaximallySingleTrace(G), "CompleteBipartite D=" + std::to_string(s.D) +
                                             " fails the maximally-single-trace predicate; use CompleteGraph");
      return G;
    }
    ColoredGraph operator()(const spec::CompleteGraph& s) const { return completeGraph(s.D); }
    ColoredGraph operator()(const std::shared_ptr<spec::MirrorDoubleMST>& s) const {
      require(s != nullptr, "empty mirror spec");
      ColoredGraph M = generate(s->seed);
      require(s->vertex >= 0 && s->vertex < M.k(), "mirror contraction vertex out of range");
      return mirrorDouble(M, s->vertex);
    }
  };
  return std::visit(Visitor{}, spec);
}

// ---------------------------------------------------------------------------
// Textual form: "<Name> key=value ...", color sets and sequences comma-separated,
// melonic insertions as color:white with 1-based white vertices.

namespace detail {

inline std::string joinInts(const std::vector<int>& v) {
  return fmt::format("{}", fmt::join(v, ","));
}

inline std::vector<int> splitInts(const std::string& text, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      require(used == item.size(), "");
    } catch (const std::exception&) {
      throw InvalidArgument("family spec field '" + key + "' has non-integer entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace detail

inline std::string formatSpec(const FamilySpec& spec) {
  using detail::joinInts;
  struct Visitor {
    std::string operator()(const spec::Melon& s) const { return fmt::format("Melon D={}", s.D); }
    std::string operator()(const spec::Cycle& s) const { return fmt::format("Cycle k={}", s.k); }
    std::string operator()(const spec::CyclicBipartition& s) const {
      return fmt::format("Cyclic D={} k={} B={}", s.D, s.k, joinInts(s.moving));
    }
    std::string operator()(const spec::MelonicScript& s) const {
      std::vector<std::string> parts;
      for (const auto& e : s.insertions) parts.push_back(fmt::format("{}:{}", e.color, e.white + 1));
      return fmt::format("Melonic D={} ins={}", s.D, fmt::join(parts, ","));
    }
    std::string operator()(const spec::PT& s) const {
      return fmt::format("PT D={} k={} fwd={} bwd={}", s.D, s.k, joinInts(s.forward), joinInts(s.backward));
    }
    std::string operator()(const spec::RM& s) const {
      return fmt::format("RM D={} k={} first={} second={}", s.D, s.k, joinInts(s.first), joinInts(s.second));
    }
    std::string operator()(const spec::JRM& s) const {
      return fmt::format("JRM D={} seq={}", s.D, joinInts(s.sequence));
    }
    std::string operator()(const spec::Lattice& s) const {
      return fmt::format("Lattice D={} m={} n={} seq={} cut={} traced={}", s.D, s.m, s.n,
                         joinInts(s.sequence), s.cut, joinInts(s.traced));
    }
    std::string operator()(const spec::ME& s) const { return fmt::format("ME n={} D={}", s.n, s.D); }
    std::string operator()(const spec::RME& s) const {
      return fmt::format("RME m={} n={} D={} traced={}", s.m, s.n, s.D, joinInts(s.traced));
    }
    std::string operator()(const spec::CompleteBipartite& s) const {
      return fmt::format("CompleteBipartite D={}", s.D);
    }
    std::string operator()(const spec::CompleteGraph& s) const { return fmt::format("CompleteGraph D={}", s.D); }
    std::string operator()(const std::shared_ptr<spec::MirrorDoubleMST>& s) const {
      return fmt::format("MirrorDoubleMST v={} seed={}", s->vertex + 1, formatSpec(s->seed));
    }
  };
  return std::visit(Visitor{}, spec);
}

inline FamilySpec parseSpec(const std::string& text) {
  std::istringstream in(text);
  std::string name;
  in >> name;
  require(!name.empty(), "empty family spec");
  std::map<std::string, std::string> kv;
  std::string token;
  std::string seedText;
  while (in >> token) {
    auto eq = token.find('=');
    require(eq != std::string::npos, "family spec token '" + token + "' is not key=value");
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "seed") {
      std::string rest;
      std::getline(in, rest);
      seedText = value + rest;
      break;
    }
    kv[key] = value;
  }
  auto num = [&](const std::string& key, int fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    auto v = detail::splitInts(it->second, key);
    require(v.size() == 1, "family spec field '" + key + "' must be a single integer");
    return v.front();
  };
  auto ints = [&](const std::string& key, std::vector<int> fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : detail::splitInts(it->second, key);
  };
  auto colors = [&](const std::string& key, ColorSet fallback) {
    return normalizeColorSet(ints(key, std::move(fallback)));
  };
  const int D = num("D", 3);
  if (name == "Melon") return spec::Melon{D};
  if (name == "Cycle") return spec::Cycle{num("k", 2)};
  if (name == "Cyclic") return spec::CyclicBipartition{D, num("k", 2), colors("B", {1})};
  if (name == "Melonic") {
    spec::MelonicScript s{D, {}};
    auto it = kv.find("ins");
    if (it != kv.end()) {
      std::stringstream ss(it->second);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        require(colon != std::string::npos, "melonic insertion '" + item + "' must be color:white");
        s.insertions.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)) - 1});
      }
    }
    return s;
  }
  if (name == "PT") return spec::PT{D, num("k", 3), colors("fwd", {1}), colors("bwd", {2})};
  if (name == "RM") return spec::RM{D, num("k", 4), colors("first", {1}), colors("second", {2})};
  if (name == "JRM") return spec::JRM{D, ints("seq", {})};
  if (name == "Lattice")
    return spec::Lattice{num("D", 4), num("m", 1), num("n", 1), ints("seq", {}), num("cut", 1),
                         colors("traced", {})};
  if (name == "ME") return spec::ME{num("n", 2), D};
  if (name == "RME") return spec::RME{num("m", 2), num("n", 2), colors("traced", {D}), D};
  if (name == "CompleteBipartite") return spec::CompleteBipartite{D};
  if (name == "CompleteGraph") return spec::CompleteGraph{num("D", 4)};
  if (name == "MirrorDoubleMST") {
    require(!seedText.empty(), "MirrorDoubleMST needs seed=<spec>");
    return mirrorDoubleMST(parseSpec(seedText), num("v", 1) - 1);
  }
  throw InvalidArgument("unknown family '" + name +
                        "' (known: Melon, Cycle, Cyclic, Melonic, PT, RM, JRM, Lattice, ME, RME, "
                        "CompleteBipartite, CompleteGraph, MirrorDoubleMST)");
}

// ---------------------------------------------------------------------------
// Cross-family identities

struct IdentityCheck {
  std::string name;
  bool pass = false;
};

inline std::vector<IdentityCheck> identitySuite() {
  std::vector<IdentityCheck> out;
  auto check = [&](std::string name, const ColoredGraph& a, const ColoredGraph& b) {
    out.push_back({std::move(name), isIsomorphic(a, b)});
  };
  const ColoredGraph rm4 = realignment(3, 4, {1}, {2});
  check("RM4 = ME(2,3)", rm4, multiEntropy(2, 3));
  check("RE(2,2) = ME(2,3)", reflectedMultiEntropy(2, 2, {3}, 3), multiEntropy(2, 3));
  for (int n = 1; n <= 5; ++n)
    check(fmt::format("ME({},2) = C_{}", n, n), multiEntropy(n, 2), cycleGraph(n));
  for (int D = 3; D <= 4; ++D)
    for (int c = 1; c <= D; ++c)
      check(fmt::format("RME(2,2,traced={}) = ME(2,{})", c, D), reflectedMultiEntropy(2, 2, {c}, D),
            multiEntropy(2, D));
  for (int n = 1; n <= 4; ++n)
    check(fmt::format("RE(2,{}) = RM_{}", n, 2 * n), reflectedMultiEntropy(2, n, {3}, 3),
          realignment(3, 2 * n, {1}, {2}));
  for (int c = 1; c <= 3; ++c) {
    ColorSet rest = complementColorSet({c}, 3);
    check(fmt::format("RM2 = PT2 (color {} traced)", c), realignment(3, 2, {rest[0]}, {rest[1]}),
          partialTranspose(3, 2, {rest[0]}, {rest[1]}));
  }
  check("JRM(1,2,3) = PT3", jointRealignment(3, {1, 2, 3}), partialTranspose(3, 3, {1}, {2}));
  return out;
}

// ---------------------------------------------------------------------------
// Tree compositions

struct TreeScript;
using TreeOperand = std::variant<FamilySpec, ColoredGraph, std::shared_ptr<TreeScript>>;

struct TreeStep {
  ComposeOp op = ComposeOp::Flip;
  TreeOperand operand;
  int color = 1;      // flip color
  int leftWhite = 0;  // flip edge in the accumulated graph
  int rightWhite = 0; // flip edge in the operand
  VertexRef leftVertex{Shade::White, 0};
  VertexRef rightVertex{Shade::Black, 0};
  std::optional<std::string> assumption;
};

struct TreeScript {
  TreeOperand root;
  std::vector<TreeStep> steps;
};

struct StepRecord {
  std::string description;
  ComposeOp op = ComposeOp::Flip;
  ColoredGraph left;
  ColoredGraph right;
  ColoredGraph result;
  int color = 1;
  int leftWhite = 0, rightWhite = 0;
  VertexRef leftVertex{}, rightVertex{};
  std::optional<std::string> assumption;
};

struct TreeResult {
  ColoredGraph graph;
  ColoredGraph rootGraph;
  std::vector<StepRecord> trail;
};

inline TreeResult treeCompose(const TreeScript& script);

inline ColoredGraph materialize(const TreeOperand& operand) {
  if (auto* s = std::get_if<FamilySpec>(&operand)) return generate(*s);
  if (auto* g = std::get_if<ColoredGraph>(&operand)) return *g;
  return treeCompose(*std::get<std::shared_ptr<TreeScript>>(operand)).graph;
}

inline std::string describeOperand(const TreeOperand& operand) {
  if (auto* s = std::get_if<FamilySpec>(&operand)) return formatSpec(*s);
  if (auto* g = std::get_if<ColoredGraph>(&operand)) return g->toString();
  return "[subtree]";
}

inline TreeResult treeCompose(const TreeScript& script) {
  TreeResult r;
  r.graph = materialize(script.root);
  r.rootGraph = r.graph;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const auto& st = script.steps[i];
    StepRecord rec;
    rec.op = st.op;
    rec.left = r.graph;
    try {
      rec.right = materialize(st.operand);
      switch (st.op) {
        case ComposeOp::Union:
          rec.result = disjointUnion(rec.left, rec.right);
          break;
        case ComposeOp::Flip:
          rec.result = flip(rec.left, {st.color, st.leftWhite}, rec.right, {st.color, st.rightWhite});
          break;
        case ComposeOp::VertexContract:
          rec.result = vertexContract(rec.left, st.leftVertex, rec.right, st.rightVertex);
          break;
      }
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("tree step " + std::to_string(i + 1) + " (" + toString(st.op) + " with " +
                            describeOperand(st.operand) + "): " + e.what());
    }
    rec.color = st.color;
    rec.leftWhite = st.leftWhite;
    rec.rightWhite = st.rightWhite;
    rec.leftVertex = st.leftVertex;
    rec.rightVertex = st.rightVertex;
    rec.assumption = st.assumption;
    rec.description = std::string(toString(st.op)) +
                      (st.op == ComposeOp::Flip ? "_" + std::to_string(st.color) : std::string()) +
                      " " + describeOperand(st.operand);
    r.graph = rec.result;
    r.trail.push_back(std::move(rec));
  }
  return r;
}

struct TreeCompatibility {
  CompatibilityValue value;
  bool known = true;
  bool assumed = false;
  std::vector<ComposeResult> steps;
  NuWitness witness;
};

/// Propagates (Delta, mu) through a composition with composeDelta and builds a
/// witness nu for the final graph from the operands' minimizers.
inline TreeCompatibility trackCompatibility(const TreeResult& tree, const SearchBudget& budget = {}) {
  TreeCompatibility out;
  auto rootSearch = compatibilitySearch(tree.rootGraph, budget);
  out.value = {rootSearch.delta, rootSearch.mu, rootSearch.exactness};
  Permutation nu = rootSearch.witnesses.front().nu;
  for (const auto& rec : tree.trail) {
    auto rs = compatibilitySearch(rec.right, budget);
    CompatibilityValue right{rs.delta, rs.mu, rs.exactness};
    const Permutation& nuRight = rs.witnesses.front().nu;
    std::vector<int> im = nu.images();
    const int k1 = nu.degree();
    if (rec.op == ComposeOp::VertexContract) {
      // Splice: drop the contracted white/black pair and reconnect as the graphs do.
      ColoredGraph sum = disjointUnion(ColoredGraph({nu}), ColoredGraph({nuRight}));
      int w = rec.leftVertex.shade == Shade::White ? rec.leftVertex.index : k1 + rec.rightVertex.index;
      int b = rec.leftVertex.shade == Shade::Black ? rec.leftVertex.index : k1 + rec.rightVertex.index;
      nu = detail::removeWhiteBlackPair(sum, w, b).sigma(1);
    } else {
      for (int x = 0; x < nuRight.degree(); ++x) im.push_back(k1 + nuRight(x));
      nu = Permutation(std::move(im));
    }
    nu = localDescent(rec.result, nu);
    ComposeContext ctx;
    ctx.op = rec.op;
    ctx.flipColor = rec.color;
    ctx.v1 = rec.leftVertex;
    ctx.v2 = rec.rightVertex;
    ctx.declaredAssumption = rec.assumption;
    auto res = composeDelta(rec.left, out.value, rec.right, right, ctx);
    if (!res.known) {
      out.known = false;
      out.value = {evaluateNu(rec.result, nu).deltaNu, 1, Exactness::Bound};
    } else {
      out.assumed = out.assumed || res.assumed;
      out.value = {res.delta, res.mu, Exactness::Exact};
    }
    out.steps.push_back(std::move(res));
  }
  out.witness = evaluateNu(tree.graph, nu);
  return out;
}

// ---------------------------------------------------------------------------
// Third-color search for D = 3 graphs with two fixed colors

struct ThirdColorQuery {
  Permutation first;
  Permutation second;
  std::optional<int> cyclesOfThird;          // faces shared with color 1
  std::optional<int> facesWithSecond;        // faces shared with color 2
  bool connectedOnly = true;
  int minDelta = 0;
  SearchBudget budget{};
};

struct ThirdColorClass {
  int delta = 0;
  std::uint64_t mu = 0;
  std::uint64_t count = 0;
  Permutation example;
};

struct ThirdColorReport {
  std::uint64_t enumerated = 0;
  std::uint64_t admitted = 0;
  std::vector<ThirdColorClass> classes;  // sorted by (delta, mu)

  const ThirdColorClass* find(int delta, std::uint64_t mu) const {
    for (const auto& c : classes)
      if (c.delta == delta && c.mu == mu) return &c;
    return nullptr;
  }
};

/// Enumerates every third color over S_k, filtered by face counts and
/// connectivity, and tallies the compatibility (delta, mu) of the admitted graphs.
inline ThirdColorReport searchThirdColor(const ThirdColorQuery& q) {
  const int k = q.first.degree();
  require(q.second.degree() == k, "the two fixed colors act on different vertex counts");
  require(k <= 10, "third-color enumeration is limited to k <= 10");
  ThirdColorReport out;
  std::map<std::pair<int, std::uint64_t>, ThirdColorClass> tally;
  std::vector<int> im(k);
  std::iota(im.begin(), im.end(), 0);
  do {
    ++out.enumerated;
    Permutation third(im);
    if (q.cyclesOfThird && relativeCycleCount(q.first, third) != *q.cyclesOfThird) continue;
    if (q.facesWithSecond && relativeCycleCount(q.second, third) != *q.facesWithSecond) continue;
    ColoredGraph G({q.first, q.second, third});
    if (q.connectedOnly && kappa(G) != 1) continue;
    auto r = compatibilitySearch(G, q.budget);
    if (r.delta < q.minDelta) continue;
    ++out.admitted;
    auto& cls = tally[{r.delta, r.mu}];
    if (cls.count++ == 0) {
      cls.delta = r.delta;
      cls.mu = r.mu;
      cls.example = third;
    }
  } while (std::next_permutation(im.begin(), im.end()));
  for (auto& [key, cls] : tally) out.classes.push_back(std::move(cls));
  return out;
}

// ---------------------------------------------------------------------------
// Symmetrization and random graphs

/// Disjoint union of G over every permutation of its colors.
inline ColoredGraph symmetrize(const ColoredGraph& G) {
  std::vector<int> perm = fullColorSet(G.D());
  std::optional<ColoredGraph> acc;
  do {
    ColoredGraph variant = permuteColors(G, perm);
    acc = acc ? disjointUnion(*acc, variant) : variant;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *acc;
}

inline Permutation randomPermutation(int k, std::mt19937_64& rng) {
  std::vector<int> im(k);
  std::iota(im.begin(), im.end(), 0);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(std::move(im));
}

inline ColoredGraph randomGraph(int D, int k, std::mt19937_64& rng) {
  std::vector<Permutation> sig;
  for (int c = 0; c < D; ++c) sig.push_back(randomPermutation(k, rng));
  return ColoredGraph(std::move(sig));
}

inline ColoredGraph randomConnectedGraph(int D, int k, std::mt19937_64& rng) {
  for (;;) {
    ColoredGraph G = randomGraph(D, k, rng);
    if (kappa(G) == 1) return G;
  }
}

/// Connected melonic graph grown by k-1 random insertions.
inline ColoredGraph randomMelonic(int D, int k, std::mt19937_64& rng) {
  ColoredGraph G = melon(D);
  std::uniform_int_distribution<int> color(1, D);
  while (G.k() < k) {
    std::uniform_int_distribution<int> white(0, G.k() - 1);
    G = insertMelon(G, {color(rng)}, white(rng));
  }
  return G;
}

}  // namespace trinv
