#pragma once

#include "nfe/polynomial.hpp"
#include "nfe/real.hpp"

#include <vector>

namespace nfe {

/// Numerical image of an algebraic number: a complex value at the working
/// precision, a certified radius around it containing the true root, and the
/// 2x-precision companion value produced by the certification pass.
struct ComplexApprox {
  ComplexReal value;
  Real error_radius;
  ComplexReal refined;

  bool is_real() const { return value.im.is_zero(); }
};

/// All complex roots of a squarefree nonconstant integer polynomial.
///
/// Roots come from simultaneous (Aberth) iteration at `precision_bits`, then
/// are recomputed at twice that precision. The radius is the disagreement
/// between the two runs plus the Newton inclusion radius deg(q)*|q/q'| at the
/// refined value, and must be below 2^(-precision_bits/2) or a Precision
/// error is raised.
///
/// Output order: real roots in decreasing order, then conjugate pairs by
/// decreasing real part, the member with positive imaginary part first.
/// Real roots have an exactly zero imaginary part and pairs are exact
/// conjugates of each other.
std::vector<ComplexApprox> poly_complex_roots(const IntPoly& q, long precision_bits);

/// Horner evaluation of a rational polynomial at a complex point; the
/// coefficients are rounded to the precision of the point.
ComplexReal evaluate(const RationalPoly& p, const ComplexReal& z);
ComplexReal evaluate(const IntPoly& p, const ComplexReal& z);

}  // namespace nfe
