#pragma once

// The norm form F(x) = Norm_{l/k}(x_1 ω_1 + ... + x_e ω_e), solution checks,
// bounded enumeration, and equivalence classes under E_{l/k}(M).

#include "nfe/reduction.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nfe {

/// Homogeneous polynomial of degree e in e variables with coefficients in k,
/// keyed by exponent vector.
struct NormFormPoly {
  std::map<std::vector<int>, FieldElement> terms;
  int variables = 0;
  FieldPtr coefficient_field;

  FieldElement evaluate(const std::vector<FieldElement>& nu) const;
  std::string str() const;
};

/// Exact expansion of det(Σ x_i A_i), A_i the k-matrix of multiplication by
/// ω_i in the basis ω.
NormFormPoly norm_form_poly(const FullModule& m);

enum class ZetaMode { AnyTorsion, One };

struct SolutionCheck {
  bool is_solution = false;
  std::optional<FieldElement> zeta;
};

/// μ = Σ ω_i ν_i with ν_i ∈ k; tests Norm_{l/k}(μ)/β ∈ Tor(O_k^×) (or = 1).
SolutionCheck check_solution(const std::vector<FieldElement>& nu, const FieldElement& beta, const FullModule& m,
                             const std::vector<FieldElement>& torsion_k, ZetaMode mode = ZetaMode::AnyTorsion);

struct Solution {
  FieldElement mu;
  std::vector<long> coords;  // Z-coordinates in the module basis ω_i ψ_j
  FieldElement zeta;
};

struct SolutionClass {
  std::vector<std::size_t> members;  // indices into SolutionSet::solutions
  FieldElement representative;       // reduced member of the class
  double representative_height = 0;
  double bound = 0;
};

struct SolutionSet {
  FieldElement beta;
  long search_box = 0;
  std::vector<Solution> solutions;  // lexicographic in coords
  std::vector<SolutionClass> classes;
};

/// All nonzero μ ∈ M with Z-coordinates in [-bound, bound] solving the
/// norm equation. Candidates are screened with a double-precision
/// |N_{l/Q}(μ)| filter before the exact test; the box is split across threads.
SolutionSet enumerate_solutions(const FullModule& m, const FieldElement& beta, long coeff_bound,
                                const std::vector<FieldElement>& torsion_k, ZetaMode mode = ZetaMode::AnyTorsion);

/// μ_1 ~ μ_2 iff q = μ_2/μ_1 satisfies qM = M and Norm_{l/k}(q) is torsion,
/// decided exactly. Each class is represented by the reduction of its first
/// member.
void partition_classes(SolutionSet& set, const RelativeUnitSystem& sys);

/// True iff μ_2 = γ μ_1 for some γ ∈ E_{l/k}(M).
bool equivalent(const FieldElement& mu1, const FieldElement& mu2, const RelativeUnitSystem& sys);

}  // namespace nfe
