#pragma once

#include "trinv/common.hpp"

#include <cctype>
#include <compare>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace trinv {

/// A permutation of {0..k-1} stored in one-line notation.
///
/// Points are 0-based in memory.  The textual forms (cycle notation and
/// one-line arrays read from files) are 1-based.  Composition follows the
/// functional convention (p * q)(x) = p(q(x)).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      int y = images_[i];
      require(y >= 0 && y < static_cast<int>(images_.size()),
              "permutation image out of range at index " + std::to_string(i + 1));
      require(!seen[y], "permutation repeats image " + std::to_string(y + 1) + " at index " +
                            std::to_string(i + 1));
      seen[y] = 1;
    }
  }

  static Permutation identity(int k) {
    std::vector<int> im(k);
    for (int i = 0; i < k; ++i) im[i] = i;
    return Permutation(std::move(im));
  }

  /// The long cycle (1 2 ... k).
  static Permutation longCycle(int k) {
    std::vector<int> im(k);
    for (int i = 0; i < k; ++i) im[i] = (i + 1) % k;
    return Permutation(std::move(im));
  }

  static Permutation fromOneBased(const std::vector<int>& images) {
    std::vector<int> im(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) im[i] = images[i] - 1;
    return Permutation(std::move(im));
  }

  /// Builds a permutation of degree k from 1-based cycles; omitted points are fixed.
  static Permutation fromCycles(int k, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> im(k);
    for (int i = 0; i < k; ++i) im[i] = i;
    std::vector<char> used(k, 0);
    for (const auto& cyc : cycles) {
      for (std::size_t j = 0; j < cyc.size(); ++j) {
        int a = cyc[j] - 1;
        int b = cyc[(j + 1) % cyc.size()] - 1;
        require(a >= 0 && a < k, "cycle point " + std::to_string(cyc[j]) + " out of range");
        require(!used[a], "cycle notation repeats point " + std::to_string(cyc[j]));
        used[a] = 1;
        im[a] = b;
      }
    }
    return Permutation(std::move(im));
  }

  /// Parses "(1 2 3)(4 5)" or "id"; commas are accepted as separators.
  static Permutation parseCycles(int k, std::string_view text) {
    std::vector<std::vector<int>> cycles;
    std::vector<int> current;
    bool open = false;
    std::size_t i = 0;
    while (i < text.size()) {
      char ch = text[i];
      if (ch == '(') {
        require(!open, "nested parenthesis in cycle notation");
        open = true;
        current.clear();
        ++i;
      } else if (ch == ')') {
        require(open, "unbalanced ')' in cycle notation");
        open = false;
        if (!current.empty()) cycles.push_back(current);
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        require(open, "point outside parentheses in cycle notation");
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + (text[i] - '0');
          ++i;
        }
        current.push_back(v);
      } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
        ++i;
      } else if (text.substr(i, 2) == "id") {
        i += 2;
      } else {
        throw InvalidArgument(std::string("unexpected character '") + ch + "' in cycle notation");
      }
    }
    require(!open, "unterminated cycle in cycle notation");
    return fromCycles(k, cycles);
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  std::vector<int> oneBased() const {
    std::vector<int> out(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
    return out;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<int>(i);
    return Permutation(std::move(inv));
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    require(p.degree() == q.degree(), "composition of permutations with different degrees");
    std::vector<int> im(p.images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = p.images_[q.images_[i]];
    return Permutation(std::move(im));
  }

  bool isIdentity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  int cycleCount() const {
    std::vector<char> seen(images_.size(), 0);
    int count = 0;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      ++count;
      for (int j = static_cast<int>(i); !seen[j]; j = images_[j]) seen[j] = 1;
    }
    return count;
  }

  /// Cycles with 0-based points, each starting at its least element, ordered by that element.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::vector<int> cyc;
      for (int j = static_cast<int>(i); !seen[j]; j = images_[j]) {
        seen[j] = 1;
        cyc.push_back(j);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  std::vector<int> cycleType() const {
    std::vector<int> type;
    for (const auto& c : cycles()) type.push_back(static_cast<int>(c.size()));
    std::sort(type.rbegin(), type.rend());
    return type;
  }

  std::string toCycleString() const {
    std::ostringstream os;
    for (const auto& c : cycles()) {
      if (c.size() < 2) continue;
      os << '(';
      for (std::size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << c[j] + 1;
      os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "id" : s;
  }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

inline int cycleCount(const Permutation& p) { return p.cycleCount(); }

/// Number of cycles of p * q^{-1}, computed without materializing the product.
inline int relativeCycleCount(const Permutation& p, const Permutation& q) {
  require(p.degree() == q.degree(), "degree mismatch");
  const int k = p.degree();
  std::vector<int> qinv(k);
  for (int i = 0; i < k; ++i) qinv[q(i)] = i;
  std::vector<char> seen(k, 0);
  int count = 0;
  for (int i = 0; i < k; ++i) {
    if (seen[i]) continue;
    ++count;
    for (int j = i; !seen[j]; j = p(qinv[j])) seen[j] = 1;
  }
  return count;
}

/// Cayley distance: k minus the number of cycles of p q^{-1}.
inline int cayleyDistance(const Permutation& p, const Permutation& q) {
  require(p.degree() == q.degree(), "Cayley distance between permutations of different degrees (" +
                                        std::to_string(p.degree()) + " vs " +
                                        std::to_string(q.degree()) + ")");
  return p.degree() - relativeCycleCount(p, q);
}

inline Permutation power(const Permutation& p, long n) {
  Permutation base = n >= 0 ? p : p.inverse();
  unsigned long e = static_cast<unsigned long>(n >= 0 ? n : -n);
  Permutation result = Permutation::identity(p.degree());
  while (e) {
    if (e & 1UL) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

/// Conjugate of p by the relabeling map r: returns r p r^{-1}.
inline Permutation relabelPoints(const Permutation& p, const std::vector<int>& r) {
  std::vector<int> im(p.degree());
  for (int x = 0; x < p.degree(); ++x) im[r[x]] = r[p(x)];
  return Permutation(std::move(im));
}

}  // namespace trinv
