#include "nfe/polynomial.hpp"

#include "nfe/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nfe {

RationalPoly::RationalPoly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RationalPoly::RationalPoly(std::initializer_list<BigRational> coeffs) : coeffs_(coeffs) { trim(); }

RationalPoly::RationalPoly(const IntPoly& coeffs) {
  coeffs_.reserve(coeffs.size());
  for (const auto& c : coeffs) coeffs_.emplace_back(c);
  trim();
}

RationalPoly RationalPoly::constant(const BigRational& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(const BigRational& c, int degree) {
  std::vector<BigRational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return RationalPoly(std::move(v));
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRational RationalPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return *this;
  RationalPoly r = *this;
  BigRational lc = leading();
  for (auto& c : r.coeffs_) c /= lc;
  return r;
}

RationalPoly RationalPoly::derivative() const {
  std::vector<BigRational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return RationalPoly(std::move(d));
}

BigRational RationalPoly::operator()(const BigRational& x) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigRational> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(r);
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const BigRational& c) {
  for (auto& a : coeffs_) a *= c;
  trim();
  return *this;
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

std::string RationalPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    BigRational c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    bool neg = c < 0;
    BigRational a = neg ? BigRational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (i == 0 || a != 1) os << to_string(a);
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) fail(ErrorKind::Internal, "polynomial division by zero");
  if (a.degree() < b.degree()) return {RationalPoly(), a};
  std::vector<BigRational> rem = a.coeffs();
  std::vector<BigRational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const BigRational& lb = b.leading();
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    BigRational c = rem[static_cast<std::size_t>(i)] / lb;
    quo[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RationalPoly(std::move(quo)), RationalPoly(std::move(rem))};
}

RationalPoly operator%(const RationalPoly& a, const RationalPoly& b) { return divmod(a, b).second; }

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly x = a, y = b;
  while (!y.is_zero()) {
    RationalPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r0 = a, r1 = b;
  RationalPoly s0 = RationalPoly::constant(1), s1;
  RationalPoly t0, t1 = RationalPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    RationalPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    RationalPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  BigRational lc = r0.leading();
  BigRational inv = 1 / lc;
  return {r0 * inv, s0 * inv, t0 * inv};
}

RationalPoly compose_mod(const RationalPoly& p, const RationalPoly& q, const RationalPoly& m) {
  RationalPoly acc;
  const RationalPoly qm = q % m;
  for (int i = p.degree(); i >= 0; --i) {
    acc = (acc * qm) % m;
    acc += RationalPoly::constant(p.coeffs()[static_cast<std::size_t>(i)]);
  }
  return acc % m;
}

bool is_squarefree(const RationalPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<std::pair<RationalPoly, int>> squarefree_decomposition(const RationalPoly& p) {
  std::vector<std::pair<RationalPoly, int>> out;
  if (p.degree() <= 0) return out;
  RationalPoly f = p.monic();
  RationalPoly df = f.derivative();
  RationalPoly a = gcd(f, df);
  RationalPoly b = divmod(f, a).first;
  RationalPoly c = divmod(df, a).first;
  RationalPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    RationalPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  return out;
}

PrimitivePart primitive_part(const RationalPoly& p) {
  if (p.is_zero()) fail(ErrorKind::Input, "zero polynomial has no primitive part");
  BigInt den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, denominator(c));
  IntPoly ints;
  ints.reserve(p.coeffs().size());
  BigInt g = 0;
  for (const auto& c : p.coeffs()) {
    BigInt v = numerator(c) * (den / denominator(c));
    g = gcd(g, v);
    ints.push_back(v);
  }
  if (ints.back() < 0) g = -g;
  for (auto& v : ints) v /= g;
  return {BigRational(g, den), std::move(ints)};
}

int euler_totient(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

IntPoly cyclotomic(int n) {
  // x^n - 1 = prod_{d | n} Phi_d(x)
  RationalPoly num = RationalPoly::monomial(1, n) - RationalPoly::constant(1);
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = divmod(num, RationalPoly(cyclotomic(d))).first;
  }
  IntPoly out;
  for (const auto& c : num.coeffs()) out.push_back(numerator(c));
  return out;
}

}  // namespace nfe
