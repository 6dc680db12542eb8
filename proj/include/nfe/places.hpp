#pragma once

#include "nfe/number_field.hpp"

#include <Eigen/Dense>

#include <vector>

namespace nfe {

/// An archimedean place: a real embedding or a conjugate pair of complex ones.
struct Place {
  FieldTag field_tag = FieldTag::L;
  int index = 0;      // position in archimedean_places()
  bool is_real = true;
  int d_w = 1;        // local degree: 1 real, 2 complex
  int d = 1;          // degree of the owning field over Q
  int embedding = 0;  // representative embedding (index into the tower's list)
  ComplexApprox root; // image of the field generator under that embedding
};

/// The places w of l lying over the place v of k.
struct PlaceFiber {
  Place v;
  std::vector<Place> members;
};

/// One place per real embedding, then one per conjugate pair, in the order
/// of the tower's embedding list.
std::vector<Place> archimedean_places(const FieldTower& tower, FieldTag field);

/// Places of l grouped by the place of k they restrict to, in the order of
/// archimedean_places(tower, K).
std::vector<PlaceFiber> place_fibers(const FieldTower& tower);

/// log|α|_w = (d_w/d) log‖α‖_w, checked against a 2x-precision recomputation.
double log_abs(const FieldElement& alpha, const Place& w);

/// Coordinates log|α|_w over all archimedean places of α's field.
Eigen::VectorXd archimedean_log_vector(const FieldTower& tower, const FieldElement& alpha);

/// Weil height via the Mahler measure of the characteristic polynomial:
/// h(α) = (1/d)(log a + Σ log⁺|root|) over the primitive integer model with
/// leading coefficient a. Roots within their certified radius of the unit
/// circle contribute exactly zero.
double weil_height(const FieldElement& alpha);

/// Signature (r1, r2) of a field of the tower.
std::pair<int, int> signature(const FieldTower& tower, FieldTag field);

}  // namespace nfe
