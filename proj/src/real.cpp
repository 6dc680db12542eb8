#include "nfe/real.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace nfe {

Real::Real(double v, mpfr_prec_t bits) {
  mpfr_init2(x_, bits);
  mpfr_set_d(x_, v, MPFR_RNDN);
}

Real::Real(const BigInt& v, mpfr_prec_t bits) {
  mpfr_init2(x_, bits);
  mpfr_set_z(x_, v.backend().data(), MPFR_RNDN);
}

Real::Real(const BigRational& v, mpfr_prec_t bits) {
  mpfr_init2(x_, bits);
  mpfr_set_q(x_, v.backend().data(), MPFR_RNDN);
}

Real::Real(const Real& o) {
  mpfr_init2(x_, o.precision());
  mpfr_set(x_, o.x_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(x_, MPFR_PREC_MIN);
  mpfr_swap(x_, o.x_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(x_, o.precision());
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(x_, o.x_);
  return *this;
}

Real::~Real() { mpfr_clear(x_); }

void Real::upgrade(mpfr_prec_t bits) {
  if (bits > precision()) mpfr_prec_round(x_, bits, MPFR_RNDN);
}

Real& Real::operator+=(const Real& o) {
  upgrade(o.precision());
  mpfr_add(x_, x_, o.x_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  upgrade(o.precision());
  mpfr_sub(x_, x_, o.x_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  upgrade(o.precision());
  mpfr_mul(x_, x_, o.x_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  upgrade(o.precision());
  mpfr_div(x_, x_, o.x_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.x_, r.x_, MPFR_RNDN);
  return r;
}

std::string Real::str(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, x_);
  return std::string(buf.data());
}

Real Real::exp2(long e, mpfr_prec_t bits) {
  Real r(1.0, bits);
  mpfr_mul_2si(r.x_, r.x_, e, MPFR_RNDN);
  return r;
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(0.0, bits);
  mpfr_const_pi(r.x_, MPFR_RNDN);
  return r;
}

Real abs(const Real& a) {
  Real r(a);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  Real r(a);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& a) {
  Real r(a);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real cos(const Real& a) {
  Real r(a);
  mpfr_cos(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real sin(const Real& a) {
  Real r(a);
  mpfr_sin(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r(0.0, std::max(a.precision(), b.precision()));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigInt round_to_integer(const Real& a) {
  BigInt out;
  mpfr_get_z(out.backend().data(), a.get(), MPFR_RNDN);
  return out;
}

Real with_precision(const Real& a, mpfr_prec_t bits) {
  Real r(0.0, bits);
  mpfr_set(r.get(), a.get(), MPFR_RNDN);
  return r;
}

}  // namespace nfe
