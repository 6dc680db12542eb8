#pragma once

// Exact integers and rationals backed by GMP, plus the Eigen aliases used
// for exact dense linear algebra.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace nfe {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                                  boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<BigRational>;
using RationalVector = Vector<BigRational>;
using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;

/// Interchange form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& n);

/// Parses "p", "-p", "p/q" (surrounding whitespace allowed). The result is
/// normalized; a zero denominator or any other malformed text throws an
/// Input error.
BigRational parse_rational(std::string_view text);

inline bool is_integer(const BigRational& q) { return denominator(q) == 1; }

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Floor of a rational, exact.
BigInt floor(const BigRational& q);

/// Least common multiple of all denominators in a rational vector/matrix.
template <typename Derived>
BigInt common_denominator(const Eigen::MatrixBase<Derived>& m) {
  BigInt d = 1;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) d = lcm(d, denominator(m(i, j)));
  return d;
}

}  // namespace nfe
