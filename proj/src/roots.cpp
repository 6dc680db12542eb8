#include "nfe/roots.hpp"

#include "nfe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nfe {

namespace {

ComplexReal make_complex(double re, double im, mpfr_prec_t bits) { return {Real(re, bits), Real(im, bits)}; }

ComplexReal with_precision(const ComplexReal& z, mpfr_prec_t bits) {
  return {nfe::with_precision(z.re, bits), nfe::with_precision(z.im, bits)};
}

std::vector<Real> real_coefficients(const IntPoly& q, mpfr_prec_t bits) {
  std::vector<Real> out;
  out.reserve(q.size());
  for (const auto& c : q) out.emplace_back(c, bits);
  return out;
}

void horner_with_derivative(const std::vector<Real>& c, const ComplexReal& z, ComplexReal& p, ComplexReal& dp) {
  const mpfr_prec_t bits = z.re.precision();
  p = make_complex(0, 0, bits);
  dp = make_complex(0, 0, bits);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z;
    p.re += *it;
  }
}

// Running error bound for Horner evaluation at z: 2n·u·Σ|a_i||z|^i.
Real horner_noise(const std::vector<Real>& c, const ComplexReal& z) {
  const mpfr_prec_t bits = z.re.precision();
  const Real r = abs(z);
  Real acc(0.0, bits);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + abs(*it);
  return acc * Real(static_cast<long>(2 * c.size()), bits) * Real::exp2(-static_cast<long>(bits), bits);
}

/// Aberth iteration, in place. Returns true once every correction falls below
/// 2^-(bits-4) relative to max(1, |z|), or the residual is within the
/// rounding noise of the evaluation.
bool aberth(const std::vector<Real>& coeffs, std::vector<ComplexReal>& z, mpfr_prec_t bits, int max_iterations) {
  const std::size_t n = z.size();
  const Real tol = Real::exp2(-(static_cast<long>(bits) - 4), bits);
  const Real one(1.0, bits);
  ComplexReal p, dp;
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      horner_with_derivative(coeffs, z[k], p, dp);
      if (p.re.is_zero() && p.im.is_zero()) continue;
      const bool at_noise = abs(p) <= horner_noise(coeffs, z[k]);
      if (dp.re.is_zero() && dp.im.is_zero()) {
        // stationary point: nudge off it
        z[k].re += Real::exp2(-static_cast<long>(bits) / 4, bits);
        converged = false;
        continue;
      }
      ComplexReal ratio = p / dp;
      ComplexReal s = make_complex(0, 0, bits);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        ComplexReal diff = z[k] - z[j];
        if (diff.re.is_zero() && diff.im.is_zero()) continue;
        s += ComplexReal(one, Real(0.0, bits)) / diff;
      }
      ComplexReal denom = ComplexReal(one, Real(0.0, bits)) - ratio * s;
      ComplexReal w = (denom.re.is_zero() && denom.im.is_zero()) ? ratio : ratio / denom;
      z[k] -= w;
      Real scale = std::max(one, abs(z[k]));
      if (!at_noise && abs(w) > tol * scale) converged = false;
    }
    if (converged) return true;
  }
  return false;
}

std::vector<ComplexReal> initial_guesses(const IntPoly& q, mpfr_prec_t bits) {
  const std::size_t n = q.size() - 1;
  // Cauchy bound 1 + max |a_i / a_n|, evaluated in double from exact ratios.
  double bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    BigRational r(q[i], q[n]);
    bound = std::max(bound, std::fabs(static_cast<double>(r)));
  }
  double radius = 1 + bound;
  std::vector<ComplexReal> z;
  for (std::size_t k = 0; k < n; ++k) {
    double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.7;
    z.push_back(make_complex(radius * std::cos(angle), radius * std::sin(angle), bits));
  }
  return z;
}

std::vector<ComplexReal> solve_at(const IntPoly& q, std::vector<ComplexReal> seeds, mpfr_prec_t bits,
                                  int max_iterations) {
  for (auto& s : seeds) s = with_precision(s, bits);
  auto coeffs = real_coefficients(q, bits);
  if (!aberth(coeffs, seeds, bits, max_iterations))
    fail(ErrorKind::Precision, "root iteration did not converge; raise precision");
  return seeds;
}

bool less_by_output_order(const ComplexApprox& a, const ComplexApprox& b) {
  bool ra = a.is_real(), rb = b.is_real();
  if (ra != rb) return ra;
  if (!(a.value.re == b.value.re)) return a.value.re > b.value.re;
  return a.value.im > b.value.im;
}

}  // namespace

ComplexReal evaluate(const RationalPoly& p, const ComplexReal& z) {
  const mpfr_prec_t bits = std::max(z.re.precision(), z.im.precision());
  ComplexReal acc = make_complex(0, 0, bits);
  for (int i = p.degree(); i >= 0; --i) {
    acc *= z;
    acc.re += Real(p.coeffs()[static_cast<std::size_t>(i)], bits);
  }
  return acc;
}

ComplexReal evaluate(const IntPoly& p, const ComplexReal& z) {
  const mpfr_prec_t bits = std::max(z.re.precision(), z.im.precision());
  ComplexReal acc = make_complex(0, 0, bits);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc *= z;
    acc.re += Real(*it, bits);
  }
  return acc;
}

std::vector<ComplexApprox> poly_complex_roots(const IntPoly& q_in, long precision_bits) {
  IntPoly q = q_in;
  while (!q.empty() && q.back() == 0) q.pop_back();
  if (q.size() < 2) fail(ErrorKind::Input, "root finding needs a nonconstant polynomial");
  if (precision_bits < 16) fail(ErrorKind::Input, "precision_bits must be at least 16");
  if (!is_squarefree(RationalPoly(q))) fail(ErrorKind::Input, "input must be squarefree");

  const mpfr_prec_t bits = precision_bits;
  const mpfr_prec_t fine = 2 * precision_bits;
  const std::size_t n = q.size() - 1;

  std::vector<ComplexApprox> out;
  if (n == 1) {
    BigRational root(-q[0], q[1]);
    ComplexApprox r{make_complex(0, 0, bits), Real(0.0, bits), make_complex(0, 0, fine)};
    r.value.re = Real(root, bits);
    r.refined.re = Real(root, fine);
    r.error_radius = abs(with_precision(r.value.re, fine) - r.refined.re);
    return {r};
  }

  const int max_iterations = 200 + 50 * static_cast<int>(n);
  std::vector<ComplexReal> coarse = solve_at(q, initial_guesses(q, bits), bits, max_iterations);
  std::vector<ComplexReal> refined = solve_at(q, coarse, fine, max_iterations);

  const Real limit = Real::exp2(-precision_bits / 2, fine);
  const Real degree(static_cast<long>(n), fine);
  auto coeffs_fine = real_coefficients(q, fine);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexReal p, dp;
    horner_with_derivative(coeffs_fine, refined[k], p, dp);
    Real newton = degree * abs(p) / abs(dp);
    Real radius = abs(with_precision(coarse[k], fine) - refined[k]) + newton;
    if (!(radius < limit)) fail(ErrorKind::Precision, "root certification failed; raise precision");
    out.push_back({coarse[k], radius, refined[k]});
  }

  // Real roots get an exactly zero imaginary part; the rest must pair up.
  for (auto& r : out) {
    if (abs(r.refined.im) <= r.error_radius) {
      r.value.im = Real(0.0, bits);
      r.refined.im = Real(0.0, fine);
    }
  }
  std::vector<bool> paired(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (out[k].is_real() || paired[k] || out[k].refined.im < Real(0.0)) continue;
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k || paired[j] || out[j].is_real() || !(out[j].refined.im < Real(0.0))) continue;
      Real gap = abs(out[j].refined - out[k].refined.conj());
      if (gap <= out[j].error_radius + out[k].error_radius) {
        best = j;
        break;
      }
    }
    if (best == n) fail(ErrorKind::Precision, "conjugate pairing failed; raise precision");
    Real radius = std::max(out[k].error_radius, out[best].error_radius);
    out[k].error_radius = radius;
    out[best] = {out[k].value.conj(), radius, out[k].refined.conj()};
    paired[k] = paired[best] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!out[k].is_real() && !paired[k]) fail(ErrorKind::Precision, "conjugate pairing failed; raise precision");

  // Disjoint inclusion disks.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (abs(out[i].refined - out[j].refined) <= out[i].error_radius + out[j].error_radius)
        fail(ErrorKind::Precision, "roots not separated at this precision");

  std::sort(out.begin(), out.end(), less_by_output_order);
  return out;
}

}  // namespace nfe
