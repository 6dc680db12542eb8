#pragma once

// Reducing a solution μ of Norm_{l/k}(μ) = ζβ by a relative unit γ so that
// h(γμ) ≤ ½ Σ h(ε_j) + h(β)/[l:k].

#include "nfe/module_order.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace nfe {

/// A point of the subspace of R^{places of l} whose coordinates sum to zero
/// over every fiber W_v(l/k).
struct BalancedSubspaceVector {
  Eigen::VectorXd coords;      // indexed like archimedean_places(tower, L)
  Eigen::VectorXd fiber_sums;  // indexed like place_fibers(tower)
};

/// z_w = mean_{x|v} log|μ|_x - log|μ|_w.
BalancedSubspaceVector balance_vector(const FieldElement& mu, const RelativeUnitSystem& sys);

struct UnitRounding {
  FieldElement gamma;
  Eigen::VectorXd u;
  std::vector<long> m;
  double discrepancy = 0;  // Σ_w |log|γ|_w - z_w|
};

/// Solves log_matrix · u = z, rounds u (ties toward zero) and forms
/// γ = Π ε_j^{m_j} exactly.
UnitRounding round_to_unit(const BalancedSubspaceVector& z, const RelativeUnitSystem& sys);

struct CmIdentity {
  double h_mu = 0;
  double h_beta_over_e = 0;
  bool equal = false;
};

/// Rank-zero case: h(μ) against h(β)/[l:k]. Requires every fiber of places
/// to be a singleton.
CmIdentity cm_height_identity(const FieldElement& mu, const FieldElement& beta, const RelativeUnitSystem& sys);

struct ReductionReport {
  FieldElement mu_in;
  FieldElement gamma;
  FieldElement mu_out;          // γ μ_in
  FieldElement representative;  // ±mu_out, last nonzero Z-coordinate positive
  BalancedSubspaceVector z;
  Eigen::VectorXd u;
  std::vector<long> m;
  double discrepancy = 0;
  double height_in = 0;
  double height_out = 0;
  double height_beta = 0;
  double bound = 0;
  FieldElement zeta;        // Norm(mu_in) = ζ β
  FieldElement zeta_prime;  // Norm(mu_out) = ζ' β
  bool bound_satisfied = false;
  std::optional<CmIdentity> cm;
};

/// Checks μ ∈ M and Norm_{l/k}(μ) ∈ Tor(O_k^×)·β exactly, then reduces. On a
/// rank-zero system μ is returned unchanged together with the height
/// identity check.
ReductionReport reduce_solution(const FieldElement& mu, const FieldElement& beta, const RelativeUnitSystem& sys);

/// Σ_v Σ_{w|v} |log|x|_w - mean_{y|v} log|x|_y|.
double fiber_deviation(const FieldElement& x, const RelativeUnitSystem& sys);

/// Negates α if its last nonzero coordinate in the module's Z-basis is negative.
FieldElement sign_normalized(const FullModule& m, const FieldElement& alpha);

/// The torsion unit ζ of k with Norm_{l/k}(μ) = ζ β, if any.
std::optional<FieldElement> norm_quotient_torsion(const FieldElement& mu, const FieldElement& beta,
                                                  const RelativeUnitSystem& sys);

}  // namespace nfe
