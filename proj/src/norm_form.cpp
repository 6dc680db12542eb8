#include "nfe/norm_form.hpp"

#include "nfe/errors.hpp"

#include <algorithm>
#include <complex>
#include <future>
#include <thread>

namespace nfe {

namespace {

using Monomial = std::vector<int>;
using MultiPoly = std::map<Monomial, FieldElement>;

void add_term(MultiPoly& p, const Monomial& mono, const FieldElement& c) {
  if (c.is_zero()) return;
  auto it = p.find(mono);
  if (it == p.end()) {
    p.emplace(mono, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) p.erase(it);
}

MultiPoly multiply(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      add_term(out, m, ca * cb);
    }
  return out;
}

using Cx = std::complex<long double>;

}  // namespace

FieldElement NormFormPoly::evaluate(const std::vector<FieldElement>& nu) const {
  if (static_cast<int>(nu.size()) != variables) fail(ErrorKind::Input, "norm form arity mismatch");
  FieldElement total = FieldElement::zero(coefficient_field);
  for (const auto& [mono, c] : terms) {
    FieldElement t = c;
    for (int i = 0; i < variables; ++i)
      if (mono[static_cast<std::size_t>(i)] > 0) t *= nu[static_cast<std::size_t>(i)].pow(mono[static_cast<std::size_t>(i)]);
    total += t;
  }
  return total;
}

std::string NormFormPoly::str() const {
  std::string out;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [mono, c] = *it;
    std::string coef = c.str();
    const bool rational = c.coeffs().degree() <= 0;
    bool negative = rational && coef.front() == '-';
    if (negative) coef.erase(0, 1);
    if (!rational) coef = "(" + coef + ")";
    std::string vars;
    for (int i = 0; i < variables; ++i) {
      const int a = mono[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      vars += (vars.empty() ? "" : "*") + std::string("x") + std::to_string(i + 1);
      if (a > 1) vars += "^" + std::to_string(a);
    }
    std::string term = coef == "1" && !vars.empty() ? vars : vars.empty() ? coef : coef + "*" + vars;
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

NormFormPoly norm_form_poly(const FullModule& m) {
  const FieldTower& tower = *m.tower;
  const int e = tower.e;
  // entry(r, c) = Σ_i A_i(r, c) x_i, A_i(·, c) = k-coordinates of ω_i ω_c
  std::vector<std::vector<MultiPoly>> entry(static_cast<std::size_t>(e), std::vector<MultiPoly>(static_cast<std::size_t>(e)));
  for (int i = 0; i < e; ++i)
    for (int c = 0; c < e; ++c) {
      auto col = k_coordinates(tower, m.omega[static_cast<std::size_t>(i)] * m.omega[static_cast<std::size_t>(c)], m.gram_solver);
      Monomial mono(static_cast<std::size_t>(e), 0);
      mono[static_cast<std::size_t>(i)] = 1;
      for (int r = 0; r < e; ++r) add_term(entry[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], mono, col[static_cast<std::size_t>(r)]);
    }
  // division-free determinant: dp[S] sums signed products over injections of
  // rows 0..|S|-1 onto the column set S
  const std::size_t full = std::size_t{1} << e;
  std::vector<MultiPoly> dp(full);
  dp[0].emplace(Monomial(static_cast<std::size_t>(e), 0), FieldElement::one(tower.k));
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (dp[mask].empty()) continue;
    const int row = __builtin_popcountll(mask);
    if (row == e) continue;
    for (int c = 0; c < e; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      const int larger = __builtin_popcountll(mask >> (c + 1));
      MultiPoly prod = multiply(dp[mask], entry[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)]);
      for (auto& [mono, coef] : prod) add_term(dp[mask | (std::size_t{1} << c)], mono, larger % 2 ? -coef : coef);
    }
  }
  NormFormPoly f;
  f.terms = std::move(dp[full - 1]);
  f.variables = e;
  f.coefficient_field = tower.k;
  return f;
}

SolutionCheck check_solution(const std::vector<FieldElement>& nu, const FieldElement& beta, const FullModule& m,
                             const std::vector<FieldElement>& torsion_k, ZetaMode mode) {
  const FieldTower& tower = *m.tower;
  if (static_cast<int>(nu.size()) != tower.e) fail(ErrorKind::Input, "expected [l:k] coordinates");
  if (beta.is_zero()) fail(ErrorKind::Input, "beta must be nonzero");
  if (std::all_of(nu.begin(), nu.end(), [](const FieldElement& x) { return x.is_zero(); }))
    fail(ErrorKind::Input, "zero vector is not a solution candidate");
  FieldElement mu = FieldElement::zero(tower.l);
  for (std::size_t i = 0; i < nu.size(); ++i) mu += embed_k_in_l(tower, nu[i]) * m.omega[i];
  const FieldElement q = relative_norm(tower, mu).value / beta;
  SolutionCheck out;
  const int idx = torsion_index(torsion_k, q);
  if (idx < 0) return out;
  if (mode == ZetaMode::One && !(q == FieldElement::one(tower.k))) return out;
  out.is_solution = true;
  out.zeta = torsion_k[static_cast<std::size_t>(idx)];
  return out;
}

SolutionSet enumerate_solutions(const FullModule& m, const FieldElement& beta, long coeff_bound,
                                const std::vector<FieldElement>& torsion_k, ZetaMode mode) {
  const FieldTower& tower = *m.tower;
  if (coeff_bound < 1) fail(ErrorKind::Input, "coefficient bound must be at least 1");
  if (beta.owner() != FieldTag::K || beta.is_zero()) fail(ErrorKind::Input, "beta must be a nonzero element of k");
  if (!is_algebraic_integer(beta)) fail(ErrorKind::Input, "beta is not integral");
  const int n = m.z_rank();
  const long side = 2 * coeff_bound + 1;
  double box = 1;
  for (int i = 0; i < n; ++i) box *= static_cast<double>(side);
  if (box > 1e8) fail(ErrorKind::Input, "search box too large");

  // σ_i(b_j) for every embedding of l
  const std::size_t d = tower.embeddings_l.size();
  std::vector<std::vector<Cx>> images(d, std::vector<Cx>(static_cast<std::size_t>(n)));
  for (std::size_t i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) {
      ComplexReal v = evaluate_at(m.z_basis[static_cast<std::size_t>(j)], tower.embeddings_l[i].refined);
      images[i][static_cast<std::size_t>(j)] = Cx(v.re.to_double(), v.im.to_double());
    }
  const long double target =
      std::abs(static_cast<long double>(absolute_norm(beta).convert_to<double>()));
  const FieldElement one_k = FieldElement::one(tower.k);

  auto scan = [&](long first_lo, long first_hi) {
    std::vector<Solution> found;
    std::vector<long> c(static_cast<std::size_t>(n), -coeff_bound);
    for (long first = first_lo; first <= first_hi; ++first) {
      std::fill(c.begin(), c.end(), -coeff_bound);
      c[0] = first;
      while (true) {
        if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) {
          long double prod = 1;
          for (std::size_t i = 0; i < d; ++i) {
            Cx s = 0;
            for (int j = 0; j < n; ++j) s += static_cast<long double>(c[static_cast<std::size_t>(j)]) * images[i][static_cast<std::size_t>(j)];
            prod *= std::abs(s);
          }
          if (std::abs(prod - target) <= 1e-6L * std::max(target, 1.0L)) {
            FieldElement mu = FieldElement::zero(tower.l);
            for (int j = 0; j < n; ++j)
              if (c[static_cast<std::size_t>(j)] != 0)
                mu += FieldElement::rational(tower.l, BigRational(c[static_cast<std::size_t>(j)])) * m.z_basis[static_cast<std::size_t>(j)];
            const FieldElement q = relative_norm(tower, mu).value / beta;
            const int idx = torsion_index(torsion_k, q);
            if (idx >= 0 && (mode == ZetaMode::AnyTorsion || q == one_k))
              found.push_back({std::move(mu), c, torsion_k[static_cast<std::size_t>(idx)]});
          }
        }
        int pos = n - 1;
        while (pos >= 1 && c[static_cast<std::size_t>(pos)] == coeff_bound) c[static_cast<std::size_t>(pos--)] = -coeff_bound;
        if (pos < 1) break;
        ++c[static_cast<std::size_t>(pos)];
      }
    }
    return found;
  };

  const long workers = box < 2e5 ? 1 : std::clamp<long>(std::thread::hardware_concurrency(), 1, side);
  std::vector<std::future<std::vector<Solution>>> jobs;
  const long per = (side + workers - 1) / workers;
  for (long lo = -coeff_bound; lo <= coeff_bound; lo += per) {
    const long hi = std::min(coeff_bound, lo + per - 1);
    jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, scan, lo, hi));
  }
  SolutionSet out{beta, coeff_bound, {}, {}};
  for (auto& j : jobs)
    for (auto& s : j.get()) out.solutions.push_back(std::move(s));
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const Solution& a, const Solution& b) { return a.coords < b.coords; });
  return out;
}

bool equivalent(const FieldElement& mu1, const FieldElement& mu2, const RelativeUnitSystem& sys) {
  const FieldElement q = mu2 / mu1;
  return is_module_unit(sys.module, q) && torsion_index(sys.torsion_k, relative_norm(*sys.module.tower, q).value) >= 0;
}

void partition_classes(SolutionSet& set, const RelativeUnitSystem& sys) {
  set.classes.clear();
  std::vector<bool> assigned(set.solutions.size(), false);
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    if (assigned[i]) continue;
    assigned[i] = true;
    const ReductionReport r = reduce_solution(set.solutions[i].mu, set.beta, sys);
    SolutionClass cls{{i}, r.representative, r.height_out, r.bound};
    for (std::size_t j = i + 1; j < set.solutions.size(); ++j) {
      if (assigned[j] || !equivalent(set.solutions[i].mu, set.solutions[j].mu, sys)) continue;
      assigned[j] = true;
      cls.members.push_back(j);
    }
    set.classes.push_back(std::move(cls));
  }
}

}  // namespace nfe
