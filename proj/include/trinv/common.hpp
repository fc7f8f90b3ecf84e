#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trinv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Raised when an input violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an identity that must hold by construction fails; it signals a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw ConsistencyError(message);
}

/// Sorted list of distinct colors, 1-based.
using ColorSet = std::vector<int>;

inline ColorSet normalizeColorSet(ColorSet colors) {
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  return colors;
}

inline ColorSet fullColorSet(int D) {
  ColorSet all(D);
  for (int c = 0; c < D; ++c) all[c] = c + 1;
  return all;
}

inline ColorSet complementColorSet(const ColorSet& B, int D) {
  ColorSet out;
  for (int c = 1; c <= D; ++c)
    if (!std::binary_search(B.begin(), B.end(), c)) out.push_back(c);
  return out;
}

inline bool isSubset(const ColorSet& small, const ColorSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::string colorSetKey(const ColorSet& B) {
  std::string s;
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(B[i]);
  }
  return s;
}

/// All subsets of {1..D} of the given size, in lexicographic order.
inline std::vector<ColorSet> subsetsOfSize(int D, int size) {
  std::vector<ColorSet> out;
  if (size < 0 || size > D) return out;
  ColorSet cur(size);
  for (int i = 0; i < size; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = size - 1;
    while (i >= 0 && cur[i] == D - size + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < size; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// All subsets of {1..D} with at least two colors, ordered by size then lexicographically.
inline std::vector<ColorSet> multiColorSubsets(int D) {
  std::vector<ColorSet> out;
  for (int p = 2; p <= D; ++p) {
    auto level = subsetsOfSize(D, p);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

inline std::int64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::int64_t result = 1;
  for (int i = 1; i <= r; ++i) result = result * (n - r + i) / i;
  return result;
}

inline BigInt bigPow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline Rational ratPow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  Rational b = exponent > 0 ? base : Rational(1) / base;
  unsigned e = static_cast<unsigned>(exponent > 0 ? exponent : -exponent);
  Rational r(boost::multiprecision::pow(boost::multiprecision::numerator(b), e),
             boost::multiprecision::pow(boost::multiprecision::denominator(b), e));
  return r;
}

/// Exact integer r-th root, or -1 if x is not a perfect r-th power.
inline BigInt exactRoot(const BigInt& x, unsigned r) {
  if (x < 0) return BigInt(-1);
  if (x < 2 || r == 1) return x;
  BigInt lo = 0;
  BigInt hi = 1;
  while (bigPow(hi, r) <= x) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (bigPow(mid, r) <= x)
      lo = mid;
    else
      hi = mid;
  }
  return bigPow(lo, r) == x ? lo : BigInt(-1);
}

inline BigInt catalan(int n) {
  BigInt c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

inline std::string toString(const Rational& q) {
  std::string num = boost::multiprecision::numerator(q).str();
  BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num;
  return num + "/" + den.str();
}

}  // namespace trinv
