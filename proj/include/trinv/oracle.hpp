#pragma once

#include "trinv/refstates.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace trinv {

using Complex = std::complex<double>;

/// Dense pure state on H_1 x ... x H_D, row-major with color 1 slowest.
struct DenseState {
  std::vector<int> dims;
  std::vector<Complex> amplitudes;

  int D() const { return static_cast<int>(dims.size()); }

  double norm2() const {
    double s = 0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
  }

  void normalize() {
    const double n = std::sqrt(norm2());
    require(n > 0, "cannot normalize the zero vector");
    for (auto& a : amplitudes) a /= n;
  }
};

inline constexpr std::size_t kDefaultElementBudget = 100'000'000;

namespace detail {

inline std::size_t productOf(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

inline DenseState emptyState(std::vector<int> dims, std::size_t budget) {
  for (int d : dims) require(d >= 1, "local dimensions must be positive");
  long double size = 1;
  for (int d : dims) size *= d;
  require(size <= static_cast<long double>(budget),
          "state with " + std::to_string(static_cast<double>(size)) + " amplitudes exceeds the element budget");
  DenseState s;
  s.dims = std::move(dims);
  s.amplitudes.assign(productOf(s.dims), Complex(0));
  return s;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// GHZ state of dimension N on the colors of B; the other colors sit in |0>.
inline DenseState buildGHZ(ColorSet B, int N, const std::vector<int>& dims,
                           std::size_t budget = kDefaultElementBudget) {
  B = normalizeColorSet(std::move(B));
  require(!B.empty(), "GHZ needs at least one color");
  for (int c : B) {
    require(c >= 1 && c <= static_cast<int>(dims.size()), "GHZ color out of range");
    require(dims[c - 1] >= N, "GHZ dimension exceeds the local dimension of color " + std::to_string(c));
  }
  DenseState s = detail::emptyState(dims, budget);
  const double amp = 1.0 / std::sqrt(static_cast<double>(N));
  for (int i = 0; i < N; ++i) {
    std::size_t idx = 0;
    for (std::size_t c = 0; c < dims.size(); ++c) {
      int digit = std::binary_search(B.begin(), B.end(), static_cast<int>(c) + 1) ? i : 0;
      idx = idx * dims[c] + digit;
    }
    s.amplitudes[idx] = amp;
  }
  return s;
}

/// Tensor product of GHZ blocks, one per weighted subset, with each color's
/// local index split into the digits of the blocks that touch it.
inline DenseState buildReference(const WeightFunction& alpha, std::size_t budget = kDefaultElementBudget) {
  const int D = alpha.D();
  std::vector<std::pair<ColorSet, int>> blocks;
  for (const auto& [B, w] : alpha.entries()) {
    require(w <= 1'000'000, "block weight too large for a dense state");
    blocks.emplace_back(B, w.convert_to<int>());
  }
  std::vector<int> dims(D, 1);
  for (const auto& [B, w] : blocks)
    for (int c : B) dims[c - 1] *= w;
  DenseState s = detail::emptyState(dims, budget);
  std::size_t total = 1;
  for (const auto& [B, w] : blocks) total *= static_cast<std::size_t>(w);
  double amp = 1.0 / std::sqrt(static_cast<double>(total));
  std::vector<int> choice(blocks.size(), 0);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rem = t;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      choice[b] = static_cast<int>(rem % blocks[b].second);
      rem /= blocks[b].second;
    }
    std::size_t idx = 0;
    for (int c = 1; c <= D; ++c) {
      int digit = 0;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        if (std::binary_search(blocks[b].first.begin(), blocks[b].first.end(), c))
          digit = digit * blocks[b].second + choice[b];
      idx = idx * dims[c - 1] + digit;
    }
    s.amplitudes[idx] = amp;
  }
  return s;
}

inline DenseState buildReference(const WeightedPartition& pi, std::size_t budget = kDefaultElementBudget) {
  return buildReference(canonicalize(pi), budget);
}

/// Three qutrits: each basis state of the first party paired with an antisymmetric pair.
inline DenseState buildPsiEx() {
  DenseState s = detail::emptyState({3, 3, 3}, 27);
  const double amp = 1.0 / std::sqrt(6.0);
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int a = 0; a < 3; ++a) {
    int x = pairs[a][0], y = pairs[a][1];
    s.amplitudes[a * 9 + x * 3 + y] += amp;
    s.amplitudes[a * 9 + y * 3 + x] -= amp;
  }
  return s;
}

/// Normalized i.i.d. complex Gaussian vector.
inline DenseState sampleHaar(int D, int N, std::uint64_t seed, std::size_t budget = kDefaultElementBudget) {
  DenseState s = detail::emptyState(std::vector<int>(D, N), budget);
  std::mt19937_64 rng(detail::splitmix64(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& a : s.amplitudes) {
    double re = gauss(rng);
    double im = gauss(rng);
    a = Complex(re, im);
  }
  s.normalize();
  return s;
}

// ---------------------------------------------------------------------------
// Dense contraction of Tr_G

namespace detail {

struct Tensor {
  std::vector<int> labels;
  std::vector<int> dims;
  std::vector<Complex> data;
};

/// Gather map that reorders a row-major tensor into the given label order.
inline std::vector<std::size_t> gatherMap(const std::vector<int>& labels, const std::vector<int>& dims,
                                          const std::vector<int>& order) {
  const std::size_t r = labels.size();
  std::vector<std::size_t> stride(r, 1);
  for (std::size_t i = r; i-- > 1;) stride[i - 1] = stride[i] * dims[i];
  std::vector<std::size_t> srcStride, newDims;
  for (int lab : order) {
    auto pos = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), lab) - labels.begin());
    srcStride.push_back(stride[pos]);
    newDims.push_back(dims[pos]);
  }
  std::size_t total = productOf(dims);
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> counter(r, 0);
  std::size_t src = 0;
  for (std::size_t t = 0; t < total; ++t) {
    map[t] = src;
    for (std::size_t i = r; i-- > 0;) {
      ++counter[i];
      src += srcStride[i];
      if (counter[i] < newDims[i]) break;
      src -= srcStride[i] * newDims[i];
      counter[i] = 0;
    }
  }
  return map;
}

struct ContractionStep {
  std::size_t left = 0, right = 0;  // positions in the live list; right > left
  std::vector<std::size_t> gatherLeft, gatherRight;
  std::size_t rows = 1, inner = 1, cols = 1;
  std::vector<int> labels, dims;
};

}  // namespace detail

/// Greedy pairwise contraction order for Tr_G on states of the given local dimensions.
class ContractionPlan {
 public:
  ContractionPlan(const ColoredGraph& G, const std::vector<int>& dims, std::size_t budget = kDefaultElementBudget)
      : k_(G.k()), D_(G.D()), dims_(dims) {
    require(static_cast<int>(dims.size()) == G.D(), "state and graph have different numbers of colors");
    // Leg (c, s) of white s meets leg c of black sigma_c(s); the label is (c-1) k + s.
    std::vector<detail::Tensor> live;
    for (int s = 0; s < k_; ++s) live.push_back(shape(G, s, true));
    for (int b = 0; b < k_; ++b) live.push_back(shape(G, b, false));
    while (true) {
      std::size_t bestI = 0, bestJ = 0;
      long double bestSize = -1;
      for (std::size_t i = 0; i < live.size(); ++i)
        for (std::size_t j = i + 1; j < live.size(); ++j) {
          bool shares = false;
          long double size = 1;
          for (std::size_t a = 0; a < live[i].labels.size(); ++a) {
            bool common = std::find(live[j].labels.begin(), live[j].labels.end(), live[i].labels[a]) !=
                          live[j].labels.end();
            shares = shares || common;
            if (!common) size *= live[i].dims[a];
          }
          if (!shares) continue;
          for (std::size_t a = 0; a < live[j].labels.size(); ++a)
            if (std::find(live[i].labels.begin(), live[i].labels.end(), live[j].labels[a]) == live[i].labels.end())
              size *= live[j].dims[a];
          if (bestSize < 0 || size < bestSize) {
            bestSize = size;
            bestI = i;
            bestJ = j;
          }
        }
      if (bestSize < 0) break;
      require(bestSize <= static_cast<long double>(budget),
              "contraction needs an intermediate of " + std::to_string(static_cast<double>(bestSize)) +
                  " elements, above the budget of " + std::to_string(budget));
      steps_.push_back(makeStep(live, bestI, bestJ));
    }
    scalars_ = live.size();
  }

  Complex evaluate(const DenseState& state) const {
    require(state.dims == dims_, "state dimensions differ from the plan");
    std::vector<std::vector<Complex>> live;
    std::vector<Complex> conj(state.amplitudes.size());
    for (std::size_t i = 0; i < conj.size(); ++i) conj[i] = std::conj(state.amplitudes[i]);
    for (int s = 0; s < k_; ++s) live.push_back(state.amplitudes);
    for (int b = 0; b < k_; ++b) live.push_back(conj);
    using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    for (const auto& st : steps_) {
      Mat A(st.rows, st.inner), B(st.inner, st.cols);
      const auto& a = live[st.left];
      const auto& b = live[st.right];
      for (std::size_t t = 0; t < st.gatherLeft.size(); ++t) A.data()[t] = a[st.gatherLeft[t]];
      for (std::size_t t = 0; t < st.gatherRight.size(); ++t) B.data()[t] = b[st.gatherRight[t]];
      Mat C = A * B;
      live.erase(live.begin() + static_cast<long>(st.right));
      live[st.left].assign(C.data(), C.data() + C.size());
    }
    Complex result = 1;
    for (const auto& t : live) {
      ensure(t.size() == 1, "contraction left an open tensor");
      result *= t[0];
    }
    return result;
  }

 private:
  detail::Tensor shape(const ColoredGraph& G, int v, bool white) const {
    detail::Tensor t;
    for (int c = 1; c <= D_; ++c) {
      int s = white ? v : G.sigma(c).inverse()(v);
      t.labels.push_back((c - 1) * k_ + s);
      t.dims.push_back(dims_[c - 1]);
    }
    return t;
  }

  static detail::ContractionStep makeStep(std::vector<detail::Tensor>& live, std::size_t i, std::size_t j) {
    detail::ContractionStep st;
    st.left = i;
    st.right = j;
    const auto& A = live[i];
    const auto& B = live[j];
    std::vector<int> freeA, shared, freeB, freeADims, freeBDims;
    for (std::size_t a = 0; a < A.labels.size(); ++a) {
      if (std::find(B.labels.begin(), B.labels.end(), A.labels[a]) != B.labels.end()) {
        shared.push_back(A.labels[a]);
        st.inner *= A.dims[a];
      } else {
        freeA.push_back(A.labels[a]);
        freeADims.push_back(A.dims[a]);
        st.rows *= A.dims[a];
      }
    }
    for (std::size_t b = 0; b < B.labels.size(); ++b)
      if (std::find(A.labels.begin(), A.labels.end(), B.labels[b]) == A.labels.end()) {
        freeB.push_back(B.labels[b]);
        freeBDims.push_back(B.dims[b]);
        st.cols *= B.dims[b];
      }
    std::vector<int> orderA = freeA;
    orderA.insert(orderA.end(), shared.begin(), shared.end());
    std::vector<int> orderB = shared;
    orderB.insert(orderB.end(), freeB.begin(), freeB.end());
    st.gatherLeft = detail::gatherMap(A.labels, A.dims, orderA);
    st.gatherRight = detail::gatherMap(B.labels, B.dims, orderB);
    detail::Tensor merged;
    merged.labels = freeA;
    merged.labels.insert(merged.labels.end(), freeB.begin(), freeB.end());
    merged.dims = freeADims;
    merged.dims.insert(merged.dims.end(), freeBDims.begin(), freeBDims.end());
    live.erase(live.begin() + static_cast<long>(j));
    live[i] = std::move(merged);
    return st;
  }

  int k_, D_;
  std::vector<int> dims_;
  std::vector<detail::ContractionStep> steps_;
  std::size_t scalars_ = 0;
};

inline Complex contract(const ColoredGraph& G, const DenseState& state, std::size_t budget = kDefaultElementBudget) {
  return ContractionPlan(G, state.dims, budget).evaluate(state);
}

struct MonteCarloEstimate {
  Complex mean;
  double stdError = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Sample mean of Tr_G over Haar-random states; sample i uses seed splitmix(seed + i).
inline MonteCarloEstimate monteCarloHaarMoment(const ColoredGraph& G, int N, std::size_t samples,
                                               std::uint64_t seed, std::size_t budget = kDefaultElementBudget) {
  require(samples >= 1, "Monte Carlo needs at least one sample");
  const std::vector<int> dims(G.D(), N);
  ContractionPlan plan(G, dims, budget);
  Complex sum = 0;
  double sumSq = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    Complex v = plan.evaluate(sampleHaar(G.D(), N, seed + i, budget));
    sum += v;
    sumSq += std::norm(v);
  }
  MonteCarloEstimate e;
  e.samples = samples;
  e.seed = seed;
  e.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    double var = (sumSq - samples * std::norm(e.mean)) / static_cast<double>(samples - 1);
    e.stdError = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
  }
  return e;
}

/// |Tr_G| = 1 on a genuinely D-partite graph characterizes separable states.
inline bool separabilityTest(const DenseState& state, const ColoredGraph& G, double tol = 1e-9) {
  require(classify(G).genuinelyDPartite, "separability test needs a genuinely D-partite graph");
  return std::abs(std::abs(contract(G, state)) - 1.0) <= tol;
}

/// Tr(rho_A^m) for m = 1..upTo, from the cyclic graph of the bipartition A | complement.
inline std::vector<double> powerSums(const DenseState& state, ColorSet A, int upTo) {
  A = normalizeColorSet(std::move(A));
  require(!A.empty() && static_cast<int>(A.size()) < state.D(), "bipartition needs a proper non-empty side");
  const ColorSet other = complementColorSet(A, state.D());
  std::vector<double> out;
  for (int m = 1; m <= upTo; ++m) out.push_back(contract(cyclicBipartition(state.D(), m, other), state).real());
  return out;
}

}  // namespace trinv
