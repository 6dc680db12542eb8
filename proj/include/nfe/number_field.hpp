#pragma once

// The tower Q ⊆ k ⊆ l. Fields are Q[x]/(f) with f monic; elements are exact
// residues. The base field Q itself is the degenerate member k = Q[x]/(x).

#include "nfe/linalg.hpp"
#include "nfe/polynomial.hpp"
#include "nfe/roots.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace nfe {

enum class FieldTag { K, L };

struct NumberField {
  FieldTag tag;
  RationalPoly modulus;  // monic, squarefree (irreducibility is assumed)
  long precision_bits;
  int degree() const { return modulus.degree(); }
};

using FieldPtr = std::shared_ptr<const NumberField>;

class FieldElement {
 public:
  /// Reduces `coeffs` modulo the field's minimal polynomial.
  FieldElement(FieldPtr field, const RationalPoly& coeffs);
  static FieldElement zero(FieldPtr field) { return {std::move(field), RationalPoly()}; }
  static FieldElement one(FieldPtr field) { return {std::move(field), RationalPoly::constant(1)}; }
  static FieldElement rational(FieldPtr field, const BigRational& c) {
    return {std::move(field), RationalPoly::constant(c)};
  }
  /// Power-basis coordinates; throws an Input error if there are more than
  /// [field:Q] of them.
  static FieldElement from_coordinates(FieldPtr field, const std::vector<BigRational>& coords);

  const FieldPtr& field() const { return field_; }
  FieldTag owner() const { return field_->tag; }
  const RationalPoly& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.is_zero(); }
  /// Coordinates in the power basis 1, x, ..., x^(d-1).
  RationalVector coordinates() const;

  FieldElement inverse() const;
  FieldElement pow(long exponent) const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  FieldElement operator-() const { return {field_, -coeffs_}; }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const;

 private:
  void require_same_field(const FieldElement& o) const;
  FieldPtr field_;
  RationalPoly coeffs_;
};

enum class ArithOp { Add, Sub, Mul, Div };
FieldElement field_arithmetic(const FieldElement& a, const FieldElement& b, ArithOp op);

/// Multiplication-by-α on the power basis; column j holds α·x^j.
RationalMatrix mult_matrix(const FieldElement& alpha);

/// det(xI - mult_matrix(α)): monic of degree [field:Q].
RationalPoly char_poly(const FieldElement& alpha);

/// Norm to Q, the determinant of the multiplication matrix.
BigRational absolute_norm(const FieldElement& alpha);

/// True iff the characteristic polynomial has integer coefficients.
bool is_algebraic_integer(const FieldElement& alpha);

/// Order n if α is a primitive n-th root of unity, else 0. Exact: tests
/// Φ_n(α) = 0 for every n with φ(n) dividing the field degree.
int root_of_unity_order(const FieldElement& alpha);

/// Numerical image of α under the embedding sending the generator to `root`.
ComplexReal evaluate_at(const FieldElement& alpha, const ComplexReal& root);

/// Determinant of a square matrix of field elements, by exact elimination.
FieldElement determinant(std::vector<std::vector<FieldElement>> m, const FieldPtr& field);

struct FieldTower {
  FieldPtr k;
  FieldPtr l;
  RationalPoly phi_in_theta;           // the generator of k written in θ
  int e = 0;                            // [l:k]
  int f = 0;                            // [k:Q]
  std::vector<FieldElement> psi_basis;  // integral basis of O_k
  long precision_bits = 128;

  std::vector<ComplexApprox> embeddings_l;  // roots of f_l (root-finder order)
  std::vector<ComplexApprox> embeddings_k;  // roots of f_k
  std::vector<int> fiber_of;                // l-embedding -> k-embedding it restricts to
  std::vector<std::vector<int>> fibers;     // k-embedding -> its e l-embeddings

  RationalMatrix power_flat_inverse;  // inverse of the Q-basis {θ^i ψ_j} of l

  FieldElement theta() const;  // generator of l
  FieldElement phi() const;    // generator of k
  FieldElement l_rational(const BigRational& c) const { return FieldElement::rational(l, c); }
  FieldElement k_rational(const BigRational& c) const { return FieldElement::rational(k, c); }
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/// Validates and assembles the tower. Checks squarefreeness of both minimal
/// polynomials, f_k(φ(θ)) ≡ 0 mod f_l, integrality and independence of the
/// ψ basis, and groups the embeddings of l into [k:Q] fibers of size [l:k].
TowerPtr build_tower(const RationalPoly& f_k, const RationalPoly& f_l, const RationalPoly& phi_in_theta,
                     const std::vector<RationalPoly>& psi_basis, long precision_bits = 128);

/// k ⊆ l: substitutes φ(θ) for the generator of k.
FieldElement embed_k_in_l(const FieldTower& tower, const FieldElement& a);

/// Q-coordinates of an l-element in the flattened basis {ω_i ψ_j} (index
/// i*f + j), given the inverse of that basis matrix.
RationalVector flat_coordinates(const FieldElement& alpha, const RationalMatrix& flat_inverse);

/// Coordinates of an l-element over k in the k-basis ω.
std::vector<FieldElement> k_coordinates(const FieldTower& tower, const FieldElement& alpha,
                                        const RationalMatrix& flat_inverse);

/// Matrix of the flattened basis {ω_i ψ_j} (columns in power coordinates).
RationalMatrix flat_basis_matrix(const FieldTower& tower, std::span<const FieldElement> omega);

struct RelativeNorm {
  FieldElement value;  // a k-element
  bool input_was_zero = false;
};

/// Norm_{l/k}(μ): determinant over k of multiplication by μ in the k-basis ω.
RelativeNorm relative_norm(const FieldTower& tower, const FieldElement& mu, std::span<const FieldElement> omega,
                           const RationalMatrix& flat_inverse);

/// Norm_{l/k}(μ) using the power basis 1, θ, ..., θ^(e-1) of l over k.
RelativeNorm relative_norm(const FieldTower& tower, const FieldElement& mu);

}  // namespace nfe
