#pragma once

// Problem files (JSON, rationals as strings, coefficient lists constant term
// first) and their assembly into a tower, module, and relative unit system.

#include "nfe/norm_form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nfe {

using CoeffList = std::vector<std::string>;

struct ProblemFile {
  CoeffList base_minpoly;                    // f_k over Q; Q itself is ["0","1"]
  std::vector<CoeffList> base_integral_basis;  // in powers of φ
  CoeffList ext_minpoly;                     // f_l over Q
  CoeffList k_generator_in_l;                // φ in powers of θ
  std::vector<CoeffList> module_basis;       // ω_i in powers of θ
  std::optional<std::vector<CoeffList>> units_l;
  std::optional<std::vector<CoeffList>> units_k;
  std::optional<std::vector<CoeffList>> relative_units;
  std::optional<CoeffList> beta;  // in powers of φ
  std::optional<CoeffList> mu;    // in powers of θ
  std::optional<long> precision_bits;
  std::optional<std::string> zeta_mode;  // "any_torsion" or "one"
};

/// Strict parse: unknown keys, malformed rationals, and wrong shapes throw
/// Input errors. Coefficients are stored in normalized rational form.
ProblemFile parse_problem(const std::string& text);

/// Canonical JSON text (keys in a fixed order, optional keys only if set).
std::string serialize_problem(const ProblemFile& p);

struct Problem {
  ProblemFile file;
  TowerPtr tower;
  FullModule module;
  std::optional<FieldElement> beta;
  std::optional<FieldElement> mu;
  ZetaMode zeta_mode = ZetaMode::AnyTorsion;
  long precision_bits = 128;
};

Problem load_problem(const ProblemFile& file, std::optional<long> precision_override = std::nullopt);

/// From relative_units if given, else from units_l/units_k. Missing unit
/// lists default to empty for rank zero and, for real quadratic l over Q, to
/// the continued-fraction fundamental unit.
RelativeUnitSystem problem_units(const Problem& p);

/// Element syntax: a coefficient list "[13, 9]" or a sum of terms such as
/// "13+9θ", "3/2*t^2 - theta". Accepted symbols for the generator: θ, t,
/// theta (field l) and φ, p, phi (field k).
FieldElement parse_element(const std::string& text, const FieldPtr& field);

std::string read_file(const std::string& path);

}  // namespace nfe
