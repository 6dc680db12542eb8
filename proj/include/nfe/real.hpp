#pragma once

// Arbitrary-precision binary floating point (MPFR) with per-value precision,
// and a small complex type templated on its real scalar.

#include "nfe/rational.hpp"

#include <mpfr.h>

#include <cmath>
#include <string>

namespace nfe {

/// MPFR value carrying its own precision. Binary operations round to the
/// larger precision of the two operands, so a zero-initialized accumulator
/// picks up the working precision on first use.
class Real {
 public:
  static constexpr mpfr_prec_t kDefaultBits = 53;

  Real() : Real(0.0, kDefaultBits) {}
  Real(double v, mpfr_prec_t bits = kDefaultBits);
  Real(long v, mpfr_prec_t bits) : Real(static_cast<double>(0), bits) { mpfr_set_si(x_, v, MPFR_RNDN); }
  Real(const BigInt& v, mpfr_prec_t bits);
  Real(const BigRational& v, mpfr_prec_t bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  /// Decimal rendering with the given number of significant digits.
  std::string str(int digits) const;

  mpfr_srcptr get() const { return x_; }
  mpfr_ptr get() { return x_; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real operator-() const;

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.x_, b.x_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.x_, b.x_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.x_, b.x_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.x_, b.x_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.x_, b.x_); }

  bool is_zero() const { return mpfr_zero_p(x_); }

  /// 2^e at the given precision.
  static Real exp2(long e, mpfr_prec_t bits);
  static Real pi(mpfr_prec_t bits);

 private:
  void upgrade(mpfr_prec_t bits);
  mpfr_t x_;
};

Real abs(const Real& a);
Real sqrt(const Real& a);
Real log(const Real& a);
Real hypot(const Real& a, const Real& b);
Real cos(const Real& a);
Real sin(const Real& a);
/// Nearest integer.
BigInt round_to_integer(const Real& a);
/// Converts to the given precision (rounding to nearest).
Real with_precision(const Real& a, mpfr_prec_t bits);

inline double to_double(double v) { return v; }
inline double to_double(const Real& v) { return v.to_double(); }

/// Complex number over a real scalar (double or Real). std::complex is not
/// specified for non-builtin scalars, hence this minimal type.
template <typename Scalar>
struct Complex {
  Scalar re{};
  Scalar im{};

  Complex() = default;
  Complex(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Scalar r) : re(std::move(r)), im(re * Scalar(0)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Scalar r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Scalar den = o.re * o.re + o.im * o.im;
    Scalar r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }
  Complex operator-() const { return {-re, -im}; }
  Complex conj() const { return {re, -im}; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
};

template <typename Scalar>
Scalar abs(const Complex<Scalar>& z) {
  using std::hypot;
  return hypot(z.re, z.im);
}

template <typename Scalar>
Scalar norm(const Complex<Scalar>& z) {
  return z.re * z.re + z.im * z.im;
}

using ComplexReal = Complex<Real>;

}  // namespace nfe
