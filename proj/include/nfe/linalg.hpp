#pragma once

// Exact dense linear algebra over Q and Z on Eigen containers.
//
// The elimination routines are templated on the scalar and only need field
// operations plus an exact zero test, so they are used with BigRational here;
// pivoting is "first nonzero" rather than magnitude-based.

#include "nfe/errors.hpp"
#include "nfe/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace nfe {

/// In-place reduced row echelon form. Returns the pivot column of each
/// nonzero row, in order.
template <typename Scalar>
std::vector<Eigen::Index> row_reduce(Matrix<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Scalar f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
Eigen::Index exact_rank(Matrix<Scalar> m) {
  return static_cast<Eigen::Index>(row_reduce(m).size());
}

/// Solves a x = b for a matrix of full column rank. Returns nullopt when the
/// system is inconsistent; throws when the solution is not unique.
template <typename Scalar>
std::optional<Vector<Scalar>> exact_solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  if (static_cast<Eigen::Index>(pivots.size()) != a.cols())
    fail(ErrorKind::Internal, "exact_solve: matrix does not have full column rank");
  Vector<Scalar> x(a.cols());
  for (Eigen::Index i = 0; i < a.cols(); ++i) x(i) = aug(i, a.cols());
  return x;
}

template <typename Scalar>
std::optional<Matrix<Scalar>> exact_inverse(const Matrix<Scalar>& a) {
  const Eigen::Index n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  auto pivots = row_reduce(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    return std::nullopt;
  return Matrix<Scalar>(aug.rightCols(n));
}

template <typename Scalar>
Scalar exact_determinant(Matrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index p = col;
    while (p < n && m(p, col) == 0) ++p;
    if (p == n) return Scalar(0);
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      const Scalar f = m(i, col) * inv;
      for (Eigen::Index j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Characteristic polynomial coefficients of a square matrix (constant term
/// first, monic) by the Faddeev-LeVerrier recurrence.
std::vector<BigRational> characteristic_coefficients(const RationalMatrix& a);

/// Column-style Hermite reduction with the unimodular transform: a * u = h,
/// where the first `rank` columns of h are the nonzero ones.
struct ColumnHermite {
  IntMatrix h;
  IntMatrix u;
  Eigen::Index rank = 0;
};
ColumnHermite column_hermite(const IntMatrix& a);

/// Row Hermite normal form; zero rows are dropped. Pivots are positive and
/// entries above each pivot are reduced into [0, pivot).
IntMatrix row_hermite(IntMatrix a);

/// Basis of the lattice { x in Z^c : a x = 0 }, one vector per returned
/// column, canonicalized by row Hermite form of the basis.
IntMatrix integer_kernel(const IntMatrix& a);

/// LLL reduction (delta = 3/4) of the lattice spanned by the rows.
IntMatrix lll_reduce(IntMatrix basis);

IntMatrix to_integer(const RationalMatrix& m);  // throws unless all entries integral
RationalMatrix to_rational(const IntMatrix& m);

}  // namespace nfe
