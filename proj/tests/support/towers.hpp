#pragma once

// Standard towers used across the tests.

#include "nfe/module_order.hpp"

#include <random>
#include <string>
#include <vector>

namespace nfe::testing {

inline RationalPoly poly(std::initializer_list<long> c) {
  std::vector<BigRational> v;
  for (long x : c) v.emplace_back(x);
  return RationalPoly(std::move(v));
}

inline FieldElement el(const FieldPtr& f, std::initializer_list<long> c) { return FieldElement(f, poly(c)); }

inline FieldElement frac(const FieldPtr& f, std::initializer_list<const char*> c) {
  std::vector<BigRational> v;
  for (const char* x : c) v.push_back(parse_rational(x));
  return FieldElement(f, RationalPoly(std::move(v)));
}

/// Q(√d)/Q with θ = √d.
inline TowerPtr quadratic_over_q(long d, long bits = 128) {
  return build_tower(poly({0, 1}), poly({-d, 0, 1}), poly({0}), {poly({1})}, bits);
}

inline TowerPtr gaussian(long bits = 128) { return quadratic_over_q(-1, bits); }
inline TowerPtr pell(long bits = 128) { return quadratic_over_q(2, bits); }

/// Q(ζ5)/Q(√5), k generated by the golden ratio φ = -θ^2 - θ^3.
inline TowerPtr zeta5(long bits = 128) {
  return build_tower(poly({-1, -1, 1}), poly({1, 1, 1, 1, 1}), poly({0, 0, -1, -1}), {poly({1}), poly({0, 1})}, bits);
}

/// Q(2^{1/4})/Q(√2), φ = θ^2.
inline TowerPtr quartic(long bits = 128) {
  return build_tower(poly({-2, 0, 1}), poly({-2, 0, 0, 0, 1}), poly({0, 0, 1}), {poly({1}), poly({0, 1})}, bits);
}

/// Random element with coordinates a/b, |a| <= range, 1 <= b <= den.
inline FieldElement random_element(const FieldPtr& f, std::mt19937_64& rng, long range = 9, long den = 1) {
  std::uniform_int_distribution<long> num(-range, range), dd(1, den);
  std::vector<BigRational> c;
  for (int i = 0; i < f->degree(); ++i) c.emplace_back(num(rng), dd(rng));
  return FieldElement(f, RationalPoly(std::move(c)));
}

inline FieldElement random_nonzero(const FieldPtr& f, std::mt19937_64& rng, long range = 9, long den = 1) {
  for (;;) {
    FieldElement x = random_element(f, rng, range, den);
    if (!x.is_zero()) return x;
  }
}

inline FullModule power_module(const TowerPtr& t) {
  std::vector<FieldElement> omega;
  for (int i = 0; i < t->e; ++i) omega.push_back(t->theta().pow(i));
  return build_module(t, omega);
}

struct Instance {
  std::string name;
  TowerPtr tower;
  FullModule module;
  RelativeUnitSystem sys;
};

inline RelativeUnitSystem pell_system(const FullModule& m) {
  return relative_units(m, {el(m.tower->l, {1, 1})}, {});
}

/// Every corpus tower with its standard module and unit system.
inline std::vector<Instance> corpus() {
  std::vector<Instance> out;
  {
    auto t = pell();
    auto m = power_module(t);
    out.push_back({"Q(sqrt2)/Q", t, m, pell_system(m)});
  }
  {
    auto t = pell();
    auto m = build_module(t, {el(t->l, {1}), el(t->l, {0, 2})});
    out.push_back({"Z+2sqrt2 Z", t, m, pell_system(m)});
  }
  {
    auto t = gaussian();
    auto m = power_module(t);
    out.push_back({"Q(i)/Q", t, m, relative_units(m, {}, {})});
  }
  {
    auto t = zeta5();
    auto m = power_module(t);
    out.push_back({"Q(zeta5)/Q(sqrt5)", t, m, relative_units(m, {el(t->l, {0, 0, -1, -1})}, {el(t->k, {0, 1})})});
  }
  {
    auto t = quartic();
    auto m = power_module(t);
    out.push_back({"Q(2^(1/4))/Q(sqrt2)", t, m,
                   relative_units(m, {el(t->l, {1, 1}), el(t->l, {1, 0, 1})}, {el(t->k, {1, 1})})});
  }
  return out;
}

}  // namespace nfe::testing
