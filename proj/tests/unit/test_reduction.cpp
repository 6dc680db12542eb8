#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nfe/errors.hpp"
#include "nfe/reduction.hpp"
#include "towers.hpp"

#include <cmath>
#include <random>

using namespace nfe;
using namespace nfe::testing;

namespace {

struct Case {
  Instance inst;
  FieldElement mu;
  FieldElement beta;
};

// one known solution per corpus instance
std::vector<Case> solved_cases() {
  auto insts = corpus();
  std::vector<Case> out;
  auto add = [&](std::size_t i, std::initializer_list<long> mu, std::initializer_list<long> beta) {
    const auto& t = insts[i].tower;
    out.push_back({insts[i], el(t->l, mu), el(t->k, beta)});
  };
  add(0, {3, 1}, {7});
  add(0, {13, 9}, {7});
  add(1, {1, 2}, {7});
  add(2, {1, 1}, {2});
  add(3, {1, -1}, {3, -1});
  add(4, {3, 1}, {9, -1});
  return out;
}

Eigen::VectorXd logs(const Instance& inst, const FieldElement& x) { return archimedean_log_vector(*inst.tower, x); }

}  // namespace

TEST_CASE("balance vector: examples") {
  auto inst = corpus()[0];
  const auto& t = inst.tower;
  auto z = balance_vector(el(t->l, {13, 9}), inst.sys);
  REQUIRE(z.coords.size() == 2);
  CHECK(z.coords(0) == doctest::Approx(-1.13731).epsilon(1e-5));
  CHECK(z.coords(1) == doctest::Approx(1.13731).epsilon(1e-5));
  CHECK(std::abs(z.fiber_sums(0)) < 1e-12);
  CHECK(balance_vector(FieldElement::one(t->l), inst.sys).coords.isZero());
  auto z3 = balance_vector(el(t->l, {3, 1}), inst.sys);
  CHECK(z3.coords(0) == doctest::Approx(-0.25593).epsilon(1e-4));
  CHECK(z3.coords(1) == doctest::Approx(0.25593).epsilon(1e-4));
  CHECK_THROWS_AS(balance_vector(FieldElement::zero(t->l), inst.sys), Error);
}

TEST_CASE("round to unit: examples") {
  auto inst = corpus()[0];
  const auto& t = inst.tower;
  auto r = round_to_unit(balance_vector(el(t->l, {13, 9}), inst.sys), inst.sys);
  REQUIRE(r.m.size() == 1);
  CHECK(r.u(0) == doctest::Approx(-2.58077).epsilon(1e-5));
  CHECK(r.m[0] == -3);
  CHECK(r.gamma == el(t->l, {-7, 5}));
  CHECK(r.discrepancy == doctest::Approx(0.36948).epsilon(1e-4));
  CHECK(r.discrepancy <= inst.sys.height_sum());

  BalancedSubspaceVector zero{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1)};
  auto r0 = round_to_unit(zero, inst.sys);
  CHECK(r0.m[0] == 0);
  CHECK(r0.gamma == FieldElement::one(t->l));

  BalancedSubspaceVector col{inst.sys.log_matrix.col(0), Eigen::VectorXd::Zero(1)};
  auto r1 = round_to_unit(col, inst.sys);
  CHECK(r1.u(0) == doctest::Approx(1.0));
  CHECK(r1.m[0] == 1);
  CHECK(r1.gamma == el(t->l, {1, 1}));
  CHECK(r1.discrepancy < 1e-12);

  BalancedSubspaceVector off{Eigen::Vector2d(1.0, 1.0), Eigen::VectorXd::Constant(1, 2.0)};
  CHECK_THROWS_WITH_AS(round_to_unit(off, inst.sys),
                       "z not in unit-log span: inconsistent system or precision failure", Error);
}

TEST_CASE("rounding ties go toward zero") {
  auto inst = corpus()[0];
  for (double half : {0.5, -0.5, 2.5, -2.5}) {
    BalancedSubspaceVector z{inst.sys.log_matrix.col(0) * half, Eigen::VectorXd::Zero(1)};
    auto r = round_to_unit(z, inst.sys);
    CHECK(r.m[0] == static_cast<long>(std::trunc(half)));
  }
}

TEST_CASE("reduce_solution: examples") {
  auto inst = corpus()[0];
  const auto& t = inst.tower;
  const auto seven = el(t->k, {7});
  auto r = reduce_solution(el(t->l, {13, 9}), seven, inst.sys);
  CHECK(r.gamma == el(t->l, {-7, 5}));
  CHECK(r.mu_out == el(t->l, {-1, 2}));
  CHECK(r.height_out == doctest::Approx(0.5 * std::log(7.0)).epsilon(1e-12));
  CHECK(r.bound == doctest::Approx(0.5 * 0.440686793509772 + 0.5 * std::log(7.0)).epsilon(1e-12));
  CHECK(r.bound_satisfied);
  CHECK(r.zeta == FieldElement::one(t->k));
  CHECK(r.zeta_prime == -FieldElement::one(t->k));

  auto r3 = reduce_solution(el(t->l, {3, 1}), seven, inst.sys);
  CHECK(r3.m == std::vector<long>{-1});
  CHECK(r3.u(0) == doctest::Approx(-0.58075).epsilon(1e-4));
  CHECK(r3.mu_out == el(t->l, {-1, 2}));
  CHECK(r3.height_out <= r3.bound);

  auto r1 = reduce_solution(el(t->l, {1, 1}), el(t->k, {1}), inst.sys);
  CHECK(r1.mu_out == FieldElement::one(t->l));
  CHECK(r1.height_out == 0.0);
  CHECK(r1.bound == doctest::Approx(0.5 * 0.440686793509772).epsilon(1e-12));
}

TEST_CASE("reduce_solution: errors") {
  auto insts = corpus();
  const auto& p = insts[0];
  const auto& t = p.tower;
  try {
    reduce_solution(el(t->l, {1, 1}), el(t->k, {7}), p.sys);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotASolution);
    CHECK(std::string(e.what()) == "not a solution");
  }
  const auto& sub = insts[1];
  CHECK_THROWS_WITH_AS(reduce_solution(el(t->l, {3, 1}), el(t->k, {7}), sub.sys), "element outside module", Error);
  CHECK_THROWS_AS(reduce_solution(FieldElement::zero(t->l), el(t->k, {7}), p.sys), Error);
  CHECK_THROWS_AS(reduce_solution(el(t->l, {3, 1}), FieldElement::rational(t->k, BigRational(7, 2)), p.sys), Error);
}

TEST_CASE("height identity in rank zero") {
  auto insts = corpus();
  const auto& g = insts[2];
  auto c = cm_height_identity(el(g.tower->l, {1, 1}), el(g.tower->k, {2}), g.sys);
  CHECK(c.h_mu == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
  CHECK(c.h_beta_over_e == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
  CHECK(c.equal);
  auto ci = cm_height_identity(g.tower->theta(), el(g.tower->k, {1}), g.sys);
  CHECK(ci.h_mu == 0.0);
  CHECK(ci.h_beta_over_e == 0.0);
  CHECK(ci.equal);
  const auto& f = insts[3];
  auto cf = cm_height_identity(el(f.tower->l, {1, -1}), el(f.tower->k, {3, -1}), f.sys);
  CHECK(cf.h_mu == doctest::Approx(0.25 * std::log(5.0)).epsilon(1e-12));
  CHECK(cf.h_beta_over_e == doctest::Approx(0.25 * std::log(5.0)).epsilon(1e-12));
  CHECK(cf.equal);
  auto r = reduce_solution(el(f.tower->l, {1, -1}), el(f.tower->k, {3, -1}), f.sys);
  REQUIRE(r.cm);
  CHECK(r.cm->equal);
  CHECK(r.mu_out == r.mu_in);

  CHECK_THROWS_AS(cm_height_identity(el(g.tower->l, {1, 2}), el(g.tower->k, {2}), g.sys), Error);
  // a real tower with its units stripped is not CM
  auto fake = insts[0].sys;
  fake.epsilons.clear();
  fake.log_matrix.resize(2, 0);
  fake.heights.clear();
  CHECK_THROWS_WITH_AS(cm_height_identity(el(insts[0].tower->l, {3, 1}), el(insts[0].tower->k, {7}), fake),
                       "tower violates CM structure", Error);
  CHECK_THROWS_AS(cm_height_identity(el(insts[0].tower->l, {3, 1}), el(insts[0].tower->k, {7}), insts[0].sys), Error);
}

TEST_CASE("unit rounding discrepancy stays below the sum of unit heights") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> coef(-6.0, 6.0);
  for (const auto& inst : corpus()) {
    if (inst.sys.epsilons.empty()) continue;
    CAPTURE(inst.name);
    const double h = inst.sys.height_sum();
    const auto fibers = place_fibers(*inst.tower);
    int failures = 0;
    for (int trial = 0; trial < 500; ++trial) {
      Eigen::VectorXd c(static_cast<Eigen::Index>(inst.sys.epsilons.size()));
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = coef(rng);
      BalancedSubspaceVector z{inst.sys.log_matrix * c, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fibers.size()))};
      auto r = round_to_unit(z, inst.sys);
      // recompute the discrepancy from the exact γ
      const double disc = (logs(inst, r.gamma) - z.coords).cwiseAbs().sum();
      CHECK(std::abs(disc - r.discrepancy) < 1e-9);
      for (std::size_t j = 0; j < r.m.size(); ++j) CHECK(std::abs(static_cast<double>(r.m[j]) - r.u(static_cast<Eigen::Index>(j))) <= 0.5 + 1e-12);
      if (disc > h + 1e-9) ++failures;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("fiber deviation after reduction stays below the sum of unit heights") {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<long> coef(-20, 20);
  for (const auto& inst : corpus()) {
    if (inst.sys.epsilons.empty()) continue;
    CAPTURE(inst.name);
    const double h = inst.sys.height_sum();
    int failures = 0;
    for (int trial = 0; trial < 200; ++trial) {
      FieldElement mu = FieldElement::zero(inst.tower->l);
      for (const auto& b : inst.module.z_basis) mu += inst.tower->l_rational(BigRational(coef(rng))) * b;
      if (mu.is_zero()) continue;
      auto r = round_to_unit(balance_vector(mu, inst.sys), inst.sys);
      if (fiber_deviation(r.gamma * mu, inst.sys) > h + 1e-9) ++failures;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("reduction bound holds on inflated solutions") {
  for (const auto& c : solved_cases()) {
    CAPTURE(c.inst.name);
    if (c.inst.sys.epsilons.empty()) continue;
    const auto& eps = c.inst.sys.epsilons[0];
    for (int n = -8; n <= 8; ++n) {
      CAPTURE(n);
      const FieldElement mu = eps.pow(n) * c.mu;
      auto r = reduce_solution(mu, c.beta, c.inst.sys);
      CHECK(r.height_out <= r.bound + 1e-9);
      CHECK(r.bound_satisfied);
      CHECK(r.bound == doctest::Approx(0.5 * c.inst.sys.height_sum() + weil_height(c.beta) / c.inst.tower->e).epsilon(1e-12));
      CHECK(r.mu_out == r.gamma * r.mu_in);
      CHECK(module_contains(c.inst.module, r.mu_out).contained);
      CHECK(norm_quotient_torsion(r.mu_out, c.beta, c.inst.sys).has_value());
      // γ = Π ε_j^{m_j} exactly
      FieldElement g = FieldElement::one(c.inst.tower->l);
      for (std::size_t j = 0; j < r.m.size(); ++j) g *= c.inst.sys.epsilons[j].pow(r.m[j]);
      CHECK(g == r.gamma);
    }
  }
}

TEST_CASE("second reduction pass keeps the height") {
  for (const auto& c : solved_cases()) {
    CAPTURE(c.inst.name);
    auto r = reduce_solution(c.mu, c.beta, c.inst.sys);
    auto again = reduce_solution(r.mu_out, c.beta, c.inst.sys);
    CHECK(again.height_out == doctest::Approx(r.height_out).epsilon(1e-9));
  }
}

TEST_CASE("norm bookkeeping at each place of k") {
  for (const auto& c : solved_cases()) {
    CAPTURE(c.inst.name);
    auto r = reduce_solution(c.mu, c.beta, c.inst.sys);
    const Eigen::VectorXd lv = logs(c.inst, r.mu_out);
    for (const auto& fiber : place_fibers(*c.inst.tower)) {
      double s = 0;
      for (const auto& w : fiber.members) s += lv(w.index);
      CHECK(c.inst.tower->e * s == doctest::Approx(log_abs(c.beta, fiber.v)).epsilon(1e-9));
    }
  }
}

TEST_CASE("sign normalization") {
  auto inst = corpus()[0];
  const auto& t = inst.tower;
  CHECK(sign_normalized(inst.module, el(t->l, {-1, 2})) == el(t->l, {-1, 2}));
  CHECK(sign_normalized(inst.module, el(t->l, {1, -2})) == el(t->l, {-1, 2}));
  CHECK(sign_normalized(inst.module, el(t->l, {-3})) == el(t->l, {3}));
  auto r = reduce_solution(el(t->l, {-13, -9}), el(t->k, {7}), inst.sys);
  CHECK((r.representative == r.mu_out || r.representative == -r.mu_out));
  CHECK(r.representative == el(t->l, {-1, 2}));
}
