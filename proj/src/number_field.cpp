#include "nfe/number_field.hpp"

#include "nfe/errors.hpp"

#include <cmath>

namespace nfe {

FieldElement::FieldElement(FieldPtr field, const RationalPoly& coeffs) : field_(std::move(field)) {
  coeffs_ = coeffs.degree() >= field_->degree() ? coeffs % field_->modulus : coeffs;
}

FieldElement FieldElement::from_coordinates(FieldPtr field, const std::vector<BigRational>& coords) {
  if (static_cast<int>(coords.size()) > field->degree())
    fail(ErrorKind::Input, "element has more coordinates than the field degree");
  return {std::move(field), RationalPoly(coords)};
}

RationalVector FieldElement::coordinates() const {
  RationalVector v(field_->degree());
  for (int i = 0; i < field_->degree(); ++i) v(i) = coeffs_.coeff(i);
  return v;
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (field_ != o.field_) fail(ErrorKind::Input, "cross-field arithmetic requires explicit embedding");
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same_field(o);
  coeffs_ += o.coeffs_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  require_same_field(o);
  coeffs_ -= o.coeffs_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  require_same_field(o);
  coeffs_ = (coeffs_ * o.coeffs_) % field_->modulus;
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorKind::Input, "division by zero");
  ExtendedGcd g = extended_gcd(coeffs_, field_->modulus);
  if (g.g.degree() != 0) fail(ErrorKind::Input, "zero divisor: minimal polynomial is reducible");
  return {field_, g.s};
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  require_same_field(o);
  return *this *= o.inverse();
}

FieldElement FieldElement::pow(long exponent) const {
  FieldElement base = exponent < 0 ? inverse() : *this;
  unsigned long n = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  FieldElement acc = one(field_);
  while (n > 0) {
    if (n & 1UL) acc *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return acc;
}

std::string FieldElement::str() const { return coeffs_.str(field_->tag == FieldTag::L ? "θ" : "φ"); }

FieldElement field_arithmetic(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  fail(ErrorKind::Internal, "unknown arithmetic op");
}

RationalMatrix mult_matrix(const FieldElement& alpha) {
  const int d = alpha.field()->degree();
  RationalMatrix m(d, d);
  FieldElement column = alpha;
  const FieldElement x(alpha.field(), RationalPoly::x());
  for (int j = 0; j < d; ++j) {
    m.col(j) = column.coordinates();
    column *= x;
  }
  return m;
}

RationalPoly char_poly(const FieldElement& alpha) {
  return RationalPoly(characteristic_coefficients(mult_matrix(alpha)));
}

BigRational absolute_norm(const FieldElement& alpha) { return exact_determinant(mult_matrix(alpha)); }

bool is_algebraic_integer(const FieldElement& alpha) {
  const RationalPoly cp = char_poly(alpha);
  for (const auto& c : cp.coeffs())
    if (!is_integer(c)) return false;
  return true;
}

int root_of_unity_order(const FieldElement& alpha) {
  if (alpha.is_zero()) return 0;
  const int d = alpha.field()->degree();
  // φ(n) >= sqrt(n/2), so φ(n) <= d forces n <= 2 d^2.
  for (int n = 1; n <= 2 * d * d + 2; ++n) {
    if (d % euler_totient(n) != 0) continue;
    FieldElement acc = FieldElement::zero(alpha.field());
    const IntPoly phi = cyclotomic(n);
    for (auto it = phi.rbegin(); it != phi.rend(); ++it) {
      acc *= alpha;
      acc += FieldElement::rational(alpha.field(), BigRational(*it));
    }
    if (acc.is_zero()) return n;
  }
  return 0;
}

ComplexReal evaluate_at(const FieldElement& alpha, const ComplexReal& root) {
  return evaluate(alpha.coeffs(), root);
}

FieldElement determinant(std::vector<std::vector<FieldElement>> m, const FieldPtr& field) {
  const std::size_t n = m.size();
  FieldElement det = FieldElement::one(field);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col].is_zero()) ++p;
    if (p == n) return FieldElement::zero(field);
    if (p != col) {
      std::swap(m[p], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const FieldElement inv = m[col][col].inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m[i][col].is_zero()) continue;
      const FieldElement factor = m[i][col] * inv;
      for (std::size_t j = col; j < n; ++j) m[i][j] -= factor * m[col][j];
    }
  }
  return det;
}

FieldElement FieldTower::theta() const { return {l, RationalPoly::x()}; }

FieldElement FieldTower::phi() const { return {k, RationalPoly::x()}; }

FieldElement embed_k_in_l(const FieldTower& tower, const FieldElement& a) {
  if (a.owner() != FieldTag::K) fail(ErrorKind::Input, "embed_k_in_l expects a k-element");
  return {tower.l, compose_mod(a.coeffs(), tower.phi_in_theta, tower.l->modulus)};
}

RationalMatrix flat_basis_matrix(const FieldTower& tower, std::span<const FieldElement> omega) {
  const int n = tower.e * tower.f;
  RationalMatrix b(n, static_cast<Eigen::Index>(omega.size()) * tower.f);
  for (std::size_t i = 0; i < omega.size(); ++i)
    for (int j = 0; j < tower.f; ++j) {
      FieldElement prod = omega[i] * embed_k_in_l(tower, tower.psi_basis[static_cast<std::size_t>(j)]);
      b.col(static_cast<Eigen::Index>(i) * tower.f + j) = prod.coordinates();
    }
  return b;
}

RationalVector flat_coordinates(const FieldElement& alpha, const RationalMatrix& flat_inverse) {
  return flat_inverse * alpha.coordinates();
}

std::vector<FieldElement> k_coordinates(const FieldTower& tower, const FieldElement& alpha,
                                        const RationalMatrix& flat_inverse) {
  RationalVector c = flat_coordinates(alpha, flat_inverse);
  std::vector<FieldElement> out;
  for (int i = 0; i < tower.e; ++i) {
    FieldElement a = FieldElement::zero(tower.k);
    for (int j = 0; j < tower.f; ++j)
      a += FieldElement::rational(tower.k, c(i * tower.f + j)) * tower.psi_basis[static_cast<std::size_t>(j)];
    out.push_back(std::move(a));
  }
  return out;
}

RelativeNorm relative_norm(const FieldTower& tower, const FieldElement& mu, std::span<const FieldElement> omega,
                           const RationalMatrix& flat_inverse) {
  if (mu.owner() != FieldTag::L) fail(ErrorKind::Input, "relative_norm expects an l-element");
  if (mu.is_zero()) return {FieldElement::zero(tower.k), true};
  if (static_cast<int>(omega.size()) != tower.e) fail(ErrorKind::Input, "basis solve failed");
  std::vector<std::vector<FieldElement>> m(omega.size());
  for (std::size_t c = 0; c < omega.size(); ++c) {
    auto col = k_coordinates(tower, mu * omega[c], flat_inverse);
    for (std::size_t r = 0; r < omega.size(); ++r) m[r].push_back(std::move(col[r]));
  }
  // a wrong inverse would make the k-expansion disagree with μ·ω_c
  for (std::size_t c = 0; c < omega.size(); ++c) {
    FieldElement back = FieldElement::zero(tower.l);
    for (std::size_t r = 0; r < omega.size(); ++r) back += embed_k_in_l(tower, m[r][c]) * omega[r];
    if (!(back == mu * omega[c])) fail(ErrorKind::Input, "basis solve failed");
  }
  return {determinant(std::move(m), tower.k), false};
}

RelativeNorm relative_norm(const FieldTower& tower, const FieldElement& mu) {
  std::vector<FieldElement> powers;
  for (int i = 0; i < tower.e; ++i) powers.push_back(tower.theta().pow(i));
  return relative_norm(tower, mu, powers, tower.power_flat_inverse);
}

namespace {

IntPoly integer_model(const RationalPoly& p) { return primitive_part(p).poly; }

}  // namespace

TowerPtr build_tower(const RationalPoly& f_k, const RationalPoly& f_l, const RationalPoly& phi_in_theta,
                     const std::vector<RationalPoly>& psi_basis, long precision_bits) {
  if (f_k.degree() < 1 || f_k.leading() != 1) fail(ErrorKind::Input, "base minimal polynomial must be monic and nonconstant");
  if (f_l.degree() < 1 || f_l.leading() != 1) fail(ErrorKind::Input, "extension minimal polynomial must be monic and nonconstant");
  if (f_l.degree() % f_k.degree() != 0) fail(ErrorKind::Input, "[k:Q] must divide [l:Q]");
  if (phi_in_theta.degree() >= f_l.degree()) fail(ErrorKind::Input, "k generator must have degree below [l:Q]");
  if (!is_squarefree(f_k) || !is_squarefree(f_l)) fail(ErrorKind::Input, "minimal polynomial is not squarefree");
  if (!compose_mod(f_k, phi_in_theta, f_l).is_zero()) fail(ErrorKind::Input, "generator embedding invalid");

  auto tower = std::make_shared<FieldTower>();
  tower->k = std::make_shared<const NumberField>(NumberField{FieldTag::K, f_k, precision_bits});
  tower->l = std::make_shared<const NumberField>(NumberField{FieldTag::L, f_l, precision_bits});
  tower->phi_in_theta = phi_in_theta;
  tower->f = f_k.degree();
  tower->e = f_l.degree() / f_k.degree();
  tower->precision_bits = precision_bits;

  if (static_cast<int>(psi_basis.size()) != tower->f)
    fail(ErrorKind::Input, "integral basis must have [k:Q] elements");
  RationalMatrix psi_matrix(tower->f, tower->f);
  for (std::size_t j = 0; j < psi_basis.size(); ++j) {
    if (psi_basis[j].degree() >= tower->f) fail(ErrorKind::Input, "integral basis element has too many coordinates");
    FieldElement psi(tower->k, psi_basis[j]);
    if (!is_algebraic_integer(psi)) fail(ErrorKind::Input, "integral basis element not an algebraic integer");
    psi_matrix.col(static_cast<Eigen::Index>(j)) = psi.coordinates();
    tower->psi_basis.push_back(std::move(psi));
  }
  if (exact_rank(psi_matrix) != tower->f) fail(ErrorKind::Input, "integral basis not linearly independent");

  tower->embeddings_l = poly_complex_roots(integer_model(f_l), precision_bits);
  tower->embeddings_k = poly_complex_roots(integer_model(f_k), precision_bits);

  // Restrictions φ(σ(θ)); equal values (within 2^(-p/4)) share a fiber.
  const Real threshold = Real::exp2(-precision_bits / 4, 2 * precision_bits);
  const std::size_t nl = tower->embeddings_l.size();
  std::vector<ComplexReal> restriction;
  for (const auto& emb : tower->embeddings_l) restriction.push_back(evaluate(phi_in_theta, emb.refined));

  tower->fiber_of.assign(nl, -1);
  tower->fibers.assign(static_cast<std::size_t>(tower->f), {});
  std::vector<bool> k_used(tower->embeddings_k.size(), false);
  for (std::size_t i = 0; i < nl; ++i) {
    if (tower->fiber_of[i] >= 0) continue;
    int match = -1;
    for (std::size_t v = 0; v < tower->embeddings_k.size(); ++v) {
      if (k_used[v]) continue;
      Real gap = abs(restriction[i] - tower->embeddings_k[v].refined);
      if (gap < threshold) {
        match = static_cast<int>(v);
        break;
      }
    }
    if (match < 0) fail(ErrorKind::Precision, "embedding fibration failed; raise precision");
    k_used[static_cast<std::size_t>(match)] = true;
    for (std::size_t j = i; j < nl; ++j) {
      if (tower->fiber_of[j] >= 0) continue;
      if (abs(restriction[j] - restriction[i]) < threshold) {
        tower->fiber_of[j] = match;
        tower->fibers[static_cast<std::size_t>(match)].push_back(static_cast<int>(j));
      }
    }
  }
  for (const auto& fiber : tower->fibers)
    if (static_cast<int>(fiber.size()) != tower->e) fail(ErrorKind::Precision, "embedding fibration failed; raise precision");
  const Real separation = threshold * Real(10.0);
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j)
      if (tower->fiber_of[i] != tower->fiber_of[j] && !(abs(restriction[i] - restriction[j]) > separation))
        fail(ErrorKind::Precision, "embedding fibration failed; raise precision");

  std::vector<FieldElement> powers;
  for (int i = 0; i < tower->e; ++i) powers.push_back(tower->theta().pow(i));
  auto inverse = exact_inverse(flat_basis_matrix(*tower, powers));
  if (!inverse) fail(ErrorKind::Input, "power basis over k is degenerate");
  tower->power_flat_inverse = std::move(*inverse);
  return tower;
}

}  // namespace nfe
