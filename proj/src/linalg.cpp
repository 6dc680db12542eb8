#include "nfe/linalg.hpp"

#include <tuple>

namespace nfe {

namespace {

// g = s*a + t*b with g = gcd(a, b) >= 0
std::tuple<BigInt, BigInt, BigInt> xgcd(const BigInt& a, const BigInt& b) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    BigInt s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    BigInt t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

BigInt floor_div(const BigInt& a, const BigInt& b) { return floor(BigRational(a, b)); }

BigInt round_nearest(const BigRational& q) { return floor(q + BigRational(1, 2)); }

}  // namespace

std::vector<BigRational> characteristic_coefficients(const RationalMatrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<BigRational> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1;
  RationalMatrix m = RationalMatrix::Zero(n, n);
  const RationalMatrix id = RationalMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(n - k + 1)] * id;
    RationalMatrix am = a * m;
    c[static_cast<std::size_t>(n - k)] = -am.trace() / BigRational(k);
  }
  return c;
}

ColumnHermite column_hermite(const IntMatrix& a) {
  ColumnHermite out{a, IntMatrix::Identity(a.cols(), a.cols()), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  const Eigen::Index cols = a.cols();
  Eigen::Index pc = 0;

  auto combine = [&](Eigen::Index p, Eigen::Index j, const BigInt& s, const BigInt& t, const BigInt& x,
                     const BigInt& y) {
    // col p <- s*col p + t*col j ; col j <- x*col p + y*col j  (unimodular)
    IntVector hp = h.col(p), hj = h.col(j), up = u.col(p), uj = u.col(j);
    h.col(p) = s * hp + t * hj;
    h.col(j) = x * hp + y * hj;
    u.col(p) = s * up + t * uj;
    u.col(j) = x * up + y * uj;
  };

  for (Eigen::Index i = 0; i < a.rows() && pc < cols; ++i) {
    for (Eigen::Index j = pc + 1; j < cols; ++j) {
      if (h(i, j) == 0) continue;
      BigInt av = h(i, pc), bv = h(i, j);
      auto [g, s, t] = xgcd(av, bv);
      combine(pc, j, s, t, BigInt(-bv / g), BigInt(av / g));
    }
    if (h(i, pc) == 0) continue;
    if (h(i, pc) < 0) {
      h.col(pc) = -h.col(pc);
      u.col(pc) = -u.col(pc);
    }
    for (Eigen::Index k = 0; k < pc; ++k) {
      BigInt q = floor_div(h(i, k), h(i, pc));
      if (q == 0) continue;
      h.col(k) -= q * h.col(pc);
      u.col(k) -= q * u.col(pc);
    }
    ++pc;
  }
  out.rank = pc;
  return out;
}

IntMatrix row_hermite(IntMatrix a) {
  ColumnHermite ch = column_hermite(a.transpose());
  return ch.h.leftCols(ch.rank).transpose();
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const Eigen::Index c = a.cols();
  if (a.rows() == 0) return IntMatrix::Identity(c, c);
  ColumnHermite ch = column_hermite(a);
  const Eigen::Index dim = c - ch.rank;
  if (dim == 0) return IntMatrix(c, 0);
  IntMatrix basis = ch.u.rightCols(dim);
  return row_hermite(basis.transpose()).transpose();
}

IntMatrix lll_reduce(IntMatrix b) {
  const Eigen::Index n = b.rows();
  if (n < 2) return b;
  const BigRational delta(3, 4);
  RationalMatrix bstar(n, b.cols());
  RationalMatrix mu = RationalMatrix::Zero(n, n);
  std::vector<BigRational> norms(static_cast<std::size_t>(n));

  auto gram_schmidt = [&](Eigen::Index from) {
    for (Eigen::Index i = from; i < n; ++i) {
      RationalVector v = b.row(i).transpose().cast<BigRational>();
      for (Eigen::Index j = 0; j < i; ++j) {
        mu(i, j) = norms[static_cast<std::size_t>(j)] == 0
                       ? BigRational(0)
                       : BigRational(b.row(i).cast<BigRational>().dot(bstar.row(j)) /
                                     norms[static_cast<std::size_t>(j)]);
        v -= mu(i, j) * bstar.row(j).transpose();
      }
      bstar.row(i) = v.transpose();
      norms[static_cast<std::size_t>(i)] = v.squaredNorm();
    }
  };
  gram_schmidt(0);

  Eigen::Index k = 1;
  while (k < n) {
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      BigInt q = round_nearest(mu(k, j));
      if (q == 0) continue;
      b.row(k) -= q * b.row(j);
      for (Eigen::Index i = 0; i < j; ++i) mu(k, i) -= BigRational(q) * mu(j, i);
      mu(k, j) -= BigRational(q);
    }
    const auto& bk = norms[static_cast<std::size_t>(k)];
    const auto& bk1 = norms[static_cast<std::size_t>(k - 1)];
    if (bk >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bk1) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      gram_schmidt(k - 1);
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
  return b;
}

IntMatrix to_integer(const RationalMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!is_integer(m(i, j))) fail(ErrorKind::Internal, "to_integer: non-integral entry");
      out(i, j) = numerator(m(i, j));
    }
  return out;
}

RationalMatrix to_rational(const IntMatrix& m) { return m.cast<BigRational>(); }

}  // namespace nfe
