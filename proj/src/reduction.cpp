#include "nfe/reduction.hpp"

#include "nfe/errors.hpp"

#include <cmath>

namespace nfe {

namespace {

constexpr double kFiberTolerance = 1e-9;
constexpr double kBoundSlack = 1e-9;

long round_ties_toward_zero(double u) {
  const double t = std::trunc(u);
  if (std::abs(std::abs(u - t) - 0.5) < 1e-12) return static_cast<long>(t);
  return static_cast<long>(std::round(u));
}

}  // namespace

BalancedSubspaceVector balance_vector(const FieldElement& mu, const RelativeUnitSystem& sys) {
  if (mu.is_zero()) fail(ErrorKind::Input, "cannot balance the zero element");
  const FieldTower& tower = *sys.module.tower;
  const Eigen::VectorXd logs = archimedean_log_vector(tower, mu);
  const auto fibers = place_fibers(tower);
  BalancedSubspaceVector z;
  z.coords = Eigen::VectorXd::Zero(logs.size());
  z.fiber_sums = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fibers.size()));
  for (std::size_t v = 0; v < fibers.size(); ++v) {
    double mean = 0;
    for (const auto& w : fibers[v].members) mean += logs(w.index);
    mean /= static_cast<double>(fibers[v].members.size());
    for (const auto& w : fibers[v].members) {
      z.coords(w.index) = mean - logs(w.index);
      z.fiber_sums(static_cast<Eigen::Index>(v)) += z.coords(w.index);
    }
  }
  if (z.fiber_sums.size() && z.fiber_sums.cwiseAbs().maxCoeff() > kFiberTolerance)
    fail(ErrorKind::Internal, "balance vector left the fiber-sum-zero subspace");
  return z;
}

UnitRounding round_to_unit(const BalancedSubspaceVector& z, const RelativeUnitSystem& sys) {
  const FieldTower& tower = *sys.module.tower;
  const Eigen::MatrixXd& a = sys.log_matrix;
  const Eigen::Index s = a.cols();
  UnitRounding out{FieldElement::one(tower.l), Eigen::VectorXd::Zero(s), {}, 0.0};
  if (s > 0) {
    const Eigen::MatrixXd normal = a.transpose() * a;
    out.u = normal.fullPivLu().solve(a.transpose() * z.coords);
    if ((a * out.u - z.coords).norm() > 1e-6)
      fail(ErrorKind::Precision, "z not in unit-log span: inconsistent system or precision failure");
  }
  for (Eigen::Index j = 0; j < s; ++j) {
    const long mj = round_ties_toward_zero(out.u(j));
    out.m.push_back(mj);
    if (mj != 0) out.gamma *= sys.epsilons[static_cast<std::size_t>(j)].pow(mj);
  }
  out.discrepancy = (archimedean_log_vector(tower, out.gamma) - z.coords).cwiseAbs().sum();
  return out;
}

std::optional<FieldElement> norm_quotient_torsion(const FieldElement& mu, const FieldElement& beta,
                                                  const RelativeUnitSystem& sys) {
  const FieldTower& tower = *sys.module.tower;
  const FieldElement q = relative_norm(tower, mu).value / beta;
  const int idx = torsion_index(sys.torsion_k, q);
  if (idx < 0) return std::nullopt;
  return sys.torsion_k[static_cast<std::size_t>(idx)];
}

CmIdentity cm_height_identity(const FieldElement& mu, const FieldElement& beta, const RelativeUnitSystem& sys) {
  if (!sys.epsilons.empty()) fail(ErrorKind::Input, "height identity applies only when the relative unit rank is zero");
  for (const auto& fiber : place_fibers(*sys.module.tower))
    if (fiber.members.size() != 1) fail(ErrorKind::Verification, "tower violates CM structure");
  if (!norm_quotient_torsion(mu, beta, sys)) fail(ErrorKind::NotASolution, "not a solution");
  CmIdentity out;
  out.h_mu = weil_height(mu);
  out.h_beta_over_e = weil_height(beta) / static_cast<double>(sys.module.tower->e);
  out.equal = std::abs(out.h_mu - out.h_beta_over_e) < 1e-9;
  return out;
}

FieldElement sign_normalized(const FullModule& m, const FieldElement& alpha) {
  const RationalVector c = module_contains(m, alpha).coords;
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) {
    if (c(i) == 0) continue;
    return c(i) < 0 ? -alpha : alpha;
  }
  return alpha;
}

ReductionReport reduce_solution(const FieldElement& mu, const FieldElement& beta, const RelativeUnitSystem& sys) {
  const FullModule& mod = sys.module;
  const FieldTower& tower = *mod.tower;
  if (mu.owner() != FieldTag::L || mu.is_zero()) fail(ErrorKind::Input, "mu must be a nonzero element of l");
  if (beta.owner() != FieldTag::K || beta.is_zero()) fail(ErrorKind::Input, "beta must be a nonzero element of k");
  if (!is_algebraic_integer(beta)) fail(ErrorKind::Input, "beta is not integral");
  if (!module_contains(mod, mu).contained) fail(ErrorKind::Input, "element outside module");
  auto zeta = norm_quotient_torsion(mu, beta, sys);
  if (!zeta) fail(ErrorKind::NotASolution, "not a solution");

  ReductionReport r{mu, FieldElement::one(tower.l), mu, mu, {}, {}, {}, 0, 0, 0, 0, 0, *zeta, *zeta, false, {}};
  r.height_in = weil_height(mu);
  r.height_beta = weil_height(beta);
  r.bound = 0.5 * sys.height_sum() + r.height_beta / static_cast<double>(tower.e);

  if (sys.epsilons.empty()) {
    r.z = balance_vector(mu, sys);
    r.cm = cm_height_identity(mu, beta, sys);
    r.height_out = r.height_in;
    r.representative = sign_normalized(mod, mu);
    r.bound_satisfied = r.height_out <= r.bound + kBoundSlack;
    return r;
  }

  r.z = balance_vector(mu, sys);
  UnitRounding rounding = round_to_unit(r.z, sys);
  r.gamma = rounding.gamma;
  r.u = rounding.u;
  r.m = rounding.m;
  r.discrepancy = rounding.discrepancy;
  r.mu_out = r.gamma * mu;
  if (!module_contains(mod, r.mu_out).contained) fail(ErrorKind::Internal, "reduced element left the module");
  auto zeta_prime = norm_quotient_torsion(r.mu_out, beta, sys);
  if (!zeta_prime) fail(ErrorKind::Internal, "reduced element is no longer a solution");
  r.zeta_prime = *zeta_prime;
  r.height_out = weil_height(r.mu_out);
  r.representative = sign_normalized(mod, r.mu_out);
  r.bound_satisfied = r.height_out <= r.bound + kBoundSlack;
  if (!r.bound_satisfied)
    fail(ErrorKind::Internal, "height bound violated: " + std::to_string(r.height_out) + " > " + std::to_string(r.bound));
  return r;
}

double fiber_deviation(const FieldElement& x, const RelativeUnitSystem& sys) {
  const FieldTower& tower = *sys.module.tower;
  const Eigen::VectorXd logs = archimedean_log_vector(tower, x);
  double total = 0;
  for (const auto& fiber : place_fibers(tower)) {
    double mean = 0;
    for (const auto& w : fiber.members) mean += logs(w.index);
    mean /= static_cast<double>(fiber.members.size());
    for (const auto& w : fiber.members) total += std::abs(logs(w.index) - mean);
  }
  return total;
}

}  // namespace nfe
