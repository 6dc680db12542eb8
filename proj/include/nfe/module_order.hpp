#pragma once

// Full O_k-modules M ⊆ O_l, their coefficient rings, torsion units, and the
// group of relative units E_{l/k}(M).

#include "nfe/number_field.hpp"
#include "nfe/places.hpp"

#include <Eigen/Dense>

#include <vector>

namespace nfe {

/// M = O_k ω_1 + ... + O_k ω_e. The Z-basis is ω_i ψ_j at index i*f + j.
struct FullModule {
  TowerPtr tower;
  std::vector<FieldElement> omega;
  std::vector<FieldElement> z_basis;
  RationalMatrix basis_matrix;  // columns: power coordinates of z_basis
  RationalMatrix gram_solver;   // basis_matrix^-1

  int z_rank() const { return static_cast<int>(z_basis.size()); }
};

/// Checks k-linear independence (flattened Q-rank [l:Q]) and that every
/// ω_i ψ_j is an algebraic integer.
FullModule build_module(TowerPtr tower, std::vector<FieldElement> omega);

struct Membership {
  bool contained = false;
  RationalVector coords;  // α = Σ coords_n z_basis_n
};

Membership module_contains(const FullModule& m, const FieldElement& alpha);

/// True iff α M = M, i.e. α and α^-1 both map the Z-basis into M.
bool is_module_unit(const FullModule& m, const FieldElement& alpha);

/// O_M = { α ∈ l : α M ⊆ M }.
struct CoefficientRing {
  FullModule module;
  std::vector<FieldElement> ring_z_basis;  // Hermite-normalized in power coordinates
  RationalMatrix ring_matrix;              // columns: power coordinates of ring_z_basis
  RationalMatrix ring_inverse;
};

CoefficientRing coefficient_ring(const FullModule& m);

/// Membership in O_M with integer coordinates in ring_z_basis.
Membership ring_contains(const CoefficientRing& ring, const FieldElement& alpha);

/// The roots of unity of k or l, ordered by argument under the first
/// embedding (1 first). Real fields return {1, -1} directly. Otherwise each
/// candidate order n with φ(n) | [field:Q] is probed with an integer
/// relation search at the first embedding and accepted only after an exact
/// Φ_n test, so absence is not certified.
std::vector<FieldElement> torsion_units(const FieldTower& tower, FieldTag field);

struct RankTriple {
  int r_l = 0;
  int r_k = 0;
  int r_rel = 0;
  friend bool operator==(const RankTriple&, const RankTriple&) = default;
};

/// ε_1..ε_s in E_{l/k}(M) with their archimedean log matrix (rows indexed
/// by places of l, columns by ε_j).
struct RelativeUnitSystem {
  FullModule module;
  std::vector<FieldElement> epsilons;
  Eigen::MatrixXd log_matrix;
  std::vector<FieldElement> torsion_k;
  RankTriple ranks;
  std::vector<double> heights;  // h(ε_j)

  double height_sum() const;
};

/// Builds independent relative units from independent units of O_l and O_k:
/// norm exponents of units_l over units_k (numeric, then exactly verified),
/// the integer kernel of that exponent matrix, and for each kernel element the
/// least power lying in O_M^× (searched up to 10^4).
RelativeUnitSystem relative_units(const FullModule& m, const std::vector<FieldElement>& units_l,
                                  const std::vector<FieldElement>& units_k);

/// Wraps user-supplied relative units after checking ε M = M, torsion norm,
/// independence, and count r(l) - r(k).
RelativeUnitSystem relative_units_from(const FullModule& m, const std::vector<FieldElement>& epsilons);

/// Recomputes the ranks from place counts and checks them against the
/// number of ε's and the numerical rank of the log matrix.
RankTriple verify_rank(const RelativeUnitSystem& sys);

/// Numerical rank with singular values below 1e-8 (relative to max(1, σ_max))
/// treated as zero.
Eigen::Index numerical_rank(const Eigen::MatrixXd& m);

/// Fundamental unit (> 1 under the first real embedding) of O_l when
/// k = Q and l is real quadratic, from the continued fraction of the
/// generator of O_l.
FieldElement real_quadratic_fundamental_unit(const FieldTower& tower);

/// Matches α against a listed torsion unit; returns its index or -1.
int torsion_index(const std::vector<FieldElement>& torsion, const FieldElement& alpha);

}  // namespace nfe
