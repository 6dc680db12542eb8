#pragma once

#include "nfe/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace nfe {

/// Integer-coefficient polynomial, constant term first.
using IntPoly = std::vector<BigInt>;

/// Dense univariate polynomial over Q, constant term first. The coefficient
/// vector never carries trailing zeros, so the zero polynomial is empty and
/// has degree -1.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<BigRational> coeffs);
  RationalPoly(std::initializer_list<BigRational> coeffs);
  explicit RationalPoly(const IntPoly& coeffs);

  static RationalPoly constant(const BigRational& c);
  static RationalPoly monomial(const BigRational& c, int degree);
  static RationalPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }
  /// Coefficient of x^i; zero beyond the degree.
  BigRational coeff(int i) const;
  const BigRational& leading() const { return coeffs_.back(); }

  RationalPoly monic() const;
  RationalPoly derivative() const;
  BigRational operator()(const BigRational& x) const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const RationalPoly& o);
  RationalPoly& operator*=(const BigRational& c);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
  friend RationalPoly operator*(RationalPoly a, const BigRational& c) { return a *= c; }
  friend RationalPoly operator*(const BigRational& c, RationalPoly a) { return a *= c; }
  RationalPoly operator-() const;
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<BigRational> coeffs_;
};

/// Euclidean division a = q*b + r with deg r < deg b. Throws on b = 0.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator%(const RationalPoly& a, const RationalPoly& b);

/// Monic gcd (zero if both inputs are zero).
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);

struct ExtendedGcd {
  RationalPoly g, s, t;  // s*a + t*b = g, g monic
};
ExtendedGcd extended_gcd(const RationalPoly& a, const RationalPoly& b);

/// p(q(x)) reduced modulo m.
RationalPoly compose_mod(const RationalPoly& p, const RationalPoly& q, const RationalPoly& m);

bool is_squarefree(const RationalPoly& p);

/// Yun's algorithm: p = lc * prod_i f_i^i with f_i monic, squarefree and
/// pairwise coprime. Factors of degree zero are omitted.
std::vector<std::pair<RationalPoly, int>> squarefree_decomposition(const RationalPoly& p);

struct PrimitivePart {
  BigRational content;
  IntPoly poly;  // coprime integer coefficients, positive leading coefficient
};

/// p = content * poly. Throws on the zero polynomial.
PrimitivePart primitive_part(const RationalPoly& p);

/// n-th cyclotomic polynomial.
IntPoly cyclotomic(int n);

int euler_totient(int n);

}  // namespace nfe
