#pragma once

// Independent reference computations in plain machine arithmetic. None of
// these touch the library's exact or multiprecision code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

using i128 = __int128;

/// Small exact fraction over 128-bit integers.
struct Frac {
  i128 n = 0, d = 1;
  Frac() = default;
  Frac(i128 num, i128 den = 1) : n(num), d(den) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) n = -n, d = -d;
    i128 a = n < 0 ? -n : n, b = d;
    while (b) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) n /= a, d /= a;
  }
  friend Frac operator+(Frac a, Frac b) { return {a.n * b.d + b.n * a.d, a.d * b.d}; }
  friend Frac operator-(Frac a, Frac b) { return {a.n * b.d - b.n * a.d, a.d * b.d}; }
  friend Frac operator*(Frac a, Frac b) { return {a.n * b.n, a.d * b.d}; }
  friend Frac operator/(Frac a, Frac b) { return {a.n * b.d, a.d * b.n}; }
  friend bool operator==(Frac a, Frac b) { return a.n == b.n && a.d == b.d; }
  long long num() const { return static_cast<long long>(n); }
  long long den() const { return static_cast<long long>(d); }
};

/// Determinant by the Leibniz permutation sum.
inline Frac leibniz_det(const std::vector<std::vector<Frac>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Frac total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Frac term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term = term * a[i][perm[i]];
    total = total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Schoolbook product of coefficient vectors (constant first).
inline std::vector<Frac> poly_mul(const std::vector<Frac>& a, const std::vector<Frac>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Frac> out(a.size() + b.size() - 1, Frac(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

/// Images of a + b√d under both embeddings of Q(√d).
inline std::vector<std::complex<long double>> quadratic_images(long double a, long double b, long d) {
  const std::complex<long double> r = std::sqrt(std::complex<long double>(static_cast<long double>(d), 0));
  return {a + b * r, a - b * r};
}

/// h(a + b√d) for rational-integer a, b: (1/2) Σ_σ log⁺|σα| (no finite
/// contributions for algebraic integers).
inline long double quadratic_integer_height(long long a, long long b, long d) {
  long double s = 0;
  for (auto z : quadratic_images(a, b, d)) s += std::max<long double>(0, std::log(std::abs(z)));
  return s / 2;
}

/// h(p/q) = log max(|p|, |q|) for coprime p, q.
inline long double rational_height(long long p, long long q) {
  return std::log(static_cast<long double>(std::max(std::llabs(p), std::llabs(q))));
}

/// Count of (x, y) in the box with x^2 - D y^2 ∈ {±target}, (x, y) ≠ 0.
inline int count_binary_norm_solutions(long D, long target, long bound) {
  int n = 0;
  for (long x = -bound; x <= bound; ++x)
    for (long y = -bound; y <= bound; ++y) {
      if (x == 0 && y == 0) continue;
      long v = x * x - D * y * y;
      if (v == target || v == -target) ++n;
    }
  return n;
}

}  // namespace oracle
