#include "nfe/module_order.hpp"

#include "nfe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nfe {

namespace {

bool all_integral(const RationalVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integer(v(i))) return false;
  return true;
}

Eigen::MatrixXd log_columns(const FieldTower& tower, const std::vector<FieldElement>& elems, FieldTag field) {
  const auto rows = static_cast<Eigen::Index>(archimedean_places(tower, field).size());
  Eigen::MatrixXd out(rows, static_cast<Eigen::Index>(elems.size()));
  for (std::size_t j = 0; j < elems.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = archimedean_log_vector(tower, elems[j]);
  return out;
}

const char* field_label(FieldTag t) { return t == FieldTag::L ? "O_l" : "O_k"; }

void check_units(const FieldTower& tower, const std::vector<FieldElement>& units, FieldTag field, int expected) {
  for (const auto& u : units) {
    if (u.owner() != field) fail(ErrorKind::Input, std::string("unit supplied in the wrong field for ") + field_label(field));
    if (u.is_zero() || !is_algebraic_integer(u) || boost::multiprecision::abs(absolute_norm(u)) != 1)
      fail(ErrorKind::Input, "supplied element is not a unit of " + std::string(field_label(field)) + ": " + u.str());
  }
  if (!units.empty() && numerical_rank(log_columns(tower, units, field)) != static_cast<Eigen::Index>(units.size()))
    fail(ErrorKind::Input, "supplied units not independent");
  if (static_cast<int>(units.size()) != expected)
    fail(ErrorKind::Input, "expected " + std::to_string(expected) + " independent units of " + field_label(field) +
                               ", got " + std::to_string(units.size()));
}

double argument(const FieldElement& z, const ComplexApprox& root) {
  ComplexReal v = evaluate_at(z, root.refined);
  double a = std::atan2(v.im.to_double(), v.re.to_double());
  if (a < 0) a += 2 * M_PI;
  // 1 must sort first even if rounding puts it just below 2π
  if (2 * M_PI - a < 1e-12) a = 0;
  return a;
}

// A primitive n-th root of unity of the field mapping to e^{2πi/n} under the
// first embedding, found by an integer relation search and checked exactly.
std::optional<FieldElement> find_root_of_unity(const FieldPtr& field, const ComplexApprox& root, int n) {
  const int d = field->degree();
  const long bits = field->precision_bits;
  const mpfr_prec_t p2 = 2 * bits;
  const Real scale = Real::exp2(bits, p2);
  const Real angle = Real(2.0, p2) * Real::pi(p2) / Real(static_cast<long>(n), p2);
  const ComplexReal target(cos(angle), sin(angle));

  IntMatrix lattice = IntMatrix::Zero(d + 1, d + 3);
  ComplexReal power(Real(1.0, p2), Real(0.0, p2));
  for (int j = 0; j <= d; ++j) {
    const ComplexReal v = j < d ? power : -target;
    lattice(j, j) = 1;
    lattice(j, d + 1) = round_to_integer(scale * v.re);
    lattice(j, d + 2) = round_to_integer(scale * v.im);
    if (j < d) power *= root.refined;
  }
  const IntMatrix reduced = lll_reduce(lattice);
  for (Eigen::Index r = 0; r < reduced.rows(); ++r) {
    const BigInt& den = reduced(r, d);
    if (den == 0) continue;
    std::vector<BigRational> coords(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) coords[static_cast<std::size_t>(j)] = BigRational(reduced(r, j), den);
    FieldElement z = FieldElement::from_coordinates(field, coords);
    if (root_of_unity_order(z) == n) return z;
  }
  return std::nullopt;
}

}  // namespace

FullModule build_module(TowerPtr tower, std::vector<FieldElement> omega) {
  if (static_cast<int>(omega.size()) != tower->e)
    fail(ErrorKind::Input, "module basis needs exactly [l:k] = " + std::to_string(tower->e) + " elements");
  for (const auto& w : omega)
    if (w.owner() != FieldTag::L) fail(ErrorKind::Input, "module basis elements must lie in l");
  FullModule m;
  m.tower = tower;
  m.omega = std::move(omega);
  m.basis_matrix = flat_basis_matrix(*tower, m.omega);
  auto inv = exact_inverse(m.basis_matrix);
  if (!inv) fail(ErrorKind::Input, "omega basis not k-linearly independent");
  m.gram_solver = std::move(*inv);
  for (const auto& w : m.omega)
    for (const auto& psi : tower->psi_basis) {
      FieldElement b = w * embed_k_in_l(*tower, psi);
      if (!is_algebraic_integer(b)) fail(ErrorKind::Input, "module not contained in O_l");
      m.z_basis.push_back(std::move(b));
    }
  return m;
}

Membership module_contains(const FullModule& m, const FieldElement& alpha) {
  Membership out;
  out.coords = m.gram_solver * alpha.coordinates();
  out.contained = all_integral(out.coords);
  return out;
}

bool is_module_unit(const FullModule& m, const FieldElement& alpha) {
  if (alpha.is_zero()) return false;
  const FieldElement inv = alpha.inverse();
  for (const auto& b : m.z_basis)
    if (!module_contains(m, alpha * b).contained || !module_contains(m, inv * b).contained) return false;
  return true;
}

CoefficientRing coefficient_ring(const FullModule& m) {
  const Eigen::Index n = m.z_rank();
  // α = Σ x_a b_a; α b_c ∈ M for every c. Row block c holds the M-coordinates
  // of b_a b_c as a function of x.
  RationalMatrix t(n * n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index a = 0; a < n; ++a)
      t.block(c * n, a, n, 1) = m.gram_solver * (m.z_basis[static_cast<std::size_t>(a)] * m.z_basis[static_cast<std::size_t>(c)]).coordinates();
  // {x : t x ∈ Z^N} is the dual of the row lattice of t.
  BigInt den(1);
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j) den = lcm(den, boost::multiprecision::denominator(t(i, j)));
  const IntMatrix h = row_hermite(to_integer(t * BigRational(den)));
  if (h.rows() != n) fail(ErrorKind::Internal, "coefficient ring: multiplication lattice is degenerate");
  auto hinv = exact_inverse(to_rational(h));
  if (!hinv) fail(ErrorKind::Internal, "coefficient ring: singular Hermite form");
  const RationalMatrix lattice_in_m = *hinv * BigRational(den);
  const RationalMatrix power = m.basis_matrix * lattice_in_m;

  BigInt pden(1);
  for (Eigen::Index i = 0; i < power.rows(); ++i)
    for (Eigen::Index j = 0; j < power.cols(); ++j) pden = lcm(pden, boost::multiprecision::denominator(power(i, j)));
  const IntMatrix hnf = row_hermite(to_integer(RationalMatrix(power.transpose()) * BigRational(pden)));

  CoefficientRing ring;
  ring.module = m;
  ring.ring_matrix = RationalMatrix(to_rational(hnf).transpose()) / BigRational(pden);
  auto rinv = exact_inverse(ring.ring_matrix);
  if (!rinv) fail(ErrorKind::Internal, "coefficient ring: basis is not of full rank");
  ring.ring_inverse = std::move(*rinv);
  for (Eigen::Index j = 0; j < n; ++j) {
    std::vector<BigRational> c(ring.ring_matrix.col(j).begin(), ring.ring_matrix.col(j).end());
    ring.ring_z_basis.push_back(FieldElement::from_coordinates(m.tower->l, c));
  }

  if (!ring_contains(ring, FieldElement::one(m.tower->l)).contained)
    fail(ErrorKind::Internal, "coefficient ring does not contain 1");
  for (std::size_t a = 0; a < ring.ring_z_basis.size(); ++a) {
    for (std::size_t b = a; b < ring.ring_z_basis.size(); ++b)
      if (!ring_contains(ring, ring.ring_z_basis[a] * ring.ring_z_basis[b]).contained)
        fail(ErrorKind::Internal, "coefficient ring not closed under multiplication");
    for (const auto& mb : m.z_basis)
      if (!module_contains(m, ring.ring_z_basis[a] * mb).contained)
        fail(ErrorKind::Internal, "coefficient ring does not preserve the module");
  }
  return ring;
}

Membership ring_contains(const CoefficientRing& ring, const FieldElement& alpha) {
  Membership out;
  out.coords = ring.ring_inverse * alpha.coordinates();
  out.contained = all_integral(out.coords);
  return out;
}

std::vector<FieldElement> torsion_units(const FieldTower& tower, FieldTag field) {
  const FieldPtr& f = field == FieldTag::L ? tower.l : tower.k;
  const auto& emb = field == FieldTag::L ? tower.embeddings_l : tower.embeddings_k;
  std::vector<FieldElement> out{FieldElement::one(f), FieldElement::rational(f, -1)};
  if (std::any_of(emb.begin(), emb.end(), [](const ComplexApprox& r) { return r.is_real(); })) return out;

  const int d = f->degree();
  for (int n = 3; n <= 2 * d * d + 2; ++n) {
    if (d % euler_totient(n) != 0) continue;
    auto z = find_root_of_unity(f, emb.front(), n);
    if (!z) continue;
    for (int a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      FieldElement c = z->pow(a);
      if (torsion_index(out, c) < 0) out.push_back(std::move(c));
    }
  }
  std::vector<std::pair<double, FieldElement>> keyed;
  for (auto& z : out) keyed.emplace_back(argument(z, emb.front()), std::move(z));
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.clear();
  for (auto& [angle, z] : keyed) out.push_back(std::move(z));
  return out;
}

int torsion_index(const std::vector<FieldElement>& torsion, const FieldElement& alpha) {
  for (std::size_t i = 0; i < torsion.size(); ++i)
    if (torsion[i] == alpha) return static_cast<int>(i);
  return -1;
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double cutoff = 1e-8 * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++r;
  return r;
}

double RelativeUnitSystem::height_sum() const { return std::accumulate(heights.begin(), heights.end(), 0.0); }

namespace {

RelativeUnitSystem assemble(const FullModule& m, std::vector<FieldElement> epsilons, std::vector<FieldElement> torsion_k) {
  const FieldTower& tower = *m.tower;
  RelativeUnitSystem sys;
  sys.module = m;
  sys.epsilons = std::move(epsilons);
  sys.torsion_k = std::move(torsion_k);
  sys.ranks.r_l = static_cast<int>(archimedean_places(tower, FieldTag::L).size()) - 1;
  sys.ranks.r_k = static_cast<int>(archimedean_places(tower, FieldTag::K).size()) - 1;
  sys.ranks.r_rel = sys.ranks.r_l - sys.ranks.r_k;
  sys.log_matrix = log_columns(tower, sys.epsilons, FieldTag::L);
  for (const auto& eps : sys.epsilons) sys.heights.push_back(weil_height(eps));
  verify_rank(sys);
  return sys;
}

}  // namespace

RelativeUnitSystem relative_units(const FullModule& m, const std::vector<FieldElement>& units_l,
                                  const std::vector<FieldElement>& units_k) {
  const FieldTower& tower = *m.tower;
  const int r_l = static_cast<int>(archimedean_places(tower, FieldTag::L).size()) - 1;
  const int r_k = static_cast<int>(archimedean_places(tower, FieldTag::K).size()) - 1;
  check_units(tower, units_l, FieldTag::L, r_l);
  check_units(tower, units_k, FieldTag::K, r_k);
  auto torsion_k = torsion_units(tower, FieldTag::K);

  // Norm_{l/k}(u_i) = ζ_i Π_j (units_k)_j^{x_ji}
  const Eigen::MatrixXd uk = log_columns(tower, units_k, FieldTag::K);
  IntMatrix exponents(r_k, r_l);
  for (int i = 0; i < r_l; ++i) {
    const FieldElement norm = relative_norm(tower, units_l[static_cast<std::size_t>(i)]).value;
    Eigen::VectorXd a = Eigen::VectorXd::Zero(r_k);
    if (r_k > 0) {
      const Eigen::VectorXd target = archimedean_log_vector(tower, norm);
      a = uk.colPivHouseholderQr().solve(target);
      if ((uk * a - target).norm() > 1e-6) fail(ErrorKind::Precision, "precision failure or invalid unit data");
    }
    FieldElement quotient = norm;
    for (int j = 0; j < r_k; ++j) {
      const double rounded = std::round(a(j));
      if (std::abs(a(j) - rounded) > 1e-6) fail(ErrorKind::Precision, "precision failure or invalid unit data");
      exponents(j, i) = static_cast<long>(rounded);
      quotient *= units_k[static_cast<std::size_t>(j)].pow(-static_cast<long>(rounded));
    }
    if (torsion_index(torsion_k, quotient) < 0) fail(ErrorKind::Precision, "precision failure or invalid unit data");
  }

  const IntMatrix kernel = integer_kernel(exponents);
  std::vector<FieldElement> epsilons;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    FieldElement eta = FieldElement::one(tower.l);
    for (int i = 0; i < r_l; ++i) {
      const long v = kernel(i, c).convert_to<long>();
      if (v != 0) eta *= units_l[static_cast<std::size_t>(i)].pow(v);
    }
    FieldElement power = eta;
    int t = 1;
    constexpr int kPowerCap = 10000;
    while (!is_module_unit(m, power)) {
      if (++t > kPowerCap) fail(ErrorKind::Input, "order index too large for desk scale");
      power *= eta;
    }
    epsilons.push_back(std::move(power));
  }
  return assemble(m, std::move(epsilons), std::move(torsion_k));
}

RelativeUnitSystem relative_units_from(const FullModule& m, const std::vector<FieldElement>& epsilons) {
  const FieldTower& tower = *m.tower;
  auto torsion_k = torsion_units(tower, FieldTag::K);
  for (const auto& eps : epsilons) {
    if (eps.owner() != FieldTag::L) fail(ErrorKind::Input, "relative units must lie in l");
    if (!is_module_unit(m, eps)) fail(ErrorKind::Input, "relative unit does not satisfy eps*M = M: " + eps.str());
    if (torsion_index(torsion_k, relative_norm(tower, eps).value) < 0)
      fail(ErrorKind::Input, "relative unit has non-torsion norm: " + eps.str());
  }
  if (!epsilons.empty() &&
      numerical_rank(log_columns(tower, epsilons, FieldTag::L)) != static_cast<Eigen::Index>(epsilons.size()))
    fail(ErrorKind::Input, "supplied units not independent");
  const int r_rel = static_cast<int>(archimedean_places(tower, FieldTag::L).size()) -
                    static_cast<int>(archimedean_places(tower, FieldTag::K).size());
  if (static_cast<int>(epsilons.size()) != r_rel)
    fail(ErrorKind::Input, "expected " + std::to_string(r_rel) + " relative units, got " + std::to_string(epsilons.size()));
  return assemble(m, epsilons, std::move(torsion_k));
}

RankTriple verify_rank(const RelativeUnitSystem& sys) {
  const FieldTower& tower = *sys.module.tower;
  RankTriple r;
  r.r_l = static_cast<int>(archimedean_places(tower, FieldTag::L).size()) - 1;
  r.r_k = static_cast<int>(archimedean_places(tower, FieldTag::K).size()) - 1;
  r.r_rel = r.r_l - r.r_k;
  const auto s = static_cast<Eigen::Index>(sys.epsilons.size());
  if (!(r == sys.ranks) || s != r.r_rel || sys.log_matrix.cols() != s || sys.log_matrix.rows() != r.r_l + 1 ||
      numerical_rank(sys.log_matrix) != s)
    fail(ErrorKind::Verification, "rank certificate failed");
  return r;
}

FieldElement real_quadratic_fundamental_unit(const FieldTower& tower) {
  if (tower.f != 1 || tower.e != 2) fail(ErrorKind::Input, "fundamental unit finder needs k = Q and [l:Q] = 2");
  const RationalPoly& f = tower.l->modulus;
  if (!is_integer(f.coeff(0)) || !is_integer(f.coeff(1))) fail(ErrorKind::Input, "minimal polynomial must be integral");
  const BigInt b = boost::multiprecision::numerator(f.coeff(1)), c = boost::multiprecision::numerator(f.coeff(0));
  const BigInt disc = b * b - 4 * c;
  if (disc <= 0) fail(ErrorKind::Input, "field is not real quadratic");

  // disc = s^2 D with D squarefree
  BigInt big_d = disc, s = 1;
  for (BigInt q = 2; q * q <= big_d; ++q)
    while (big_d % (q * q) == 0) {
      big_d /= q * q;
      s *= q;
    }
  if (big_d == 1) fail(ErrorKind::Input, "polynomial is reducible");

  // √D = (2θ + b)/s, sign chosen positive under the first embedding
  FieldElement sqrt_d = (FieldElement(tower.l, RationalPoly({BigRational(b), BigRational(2)}))) *
                        FieldElement::rational(tower.l, BigRational(BigInt(1), s));
  if (evaluate_at(sqrt_d, tower.embeddings_l.front().refined).re < Real(0.0)) sqrt_d = -sqrt_d;

  const bool one_mod_four = big_d % 4 == 1;
  // continued fraction of (P + √D)/Q
  BigInt p_cf = one_mod_four ? 1 : 0, q_cf = one_mod_four ? 2 : 1;
  const BigInt root = boost::multiprecision::sqrt(big_d);
  const FieldElement half = FieldElement::rational(tower.l, BigRational(1, 2));
  const FieldElement omega = one_mod_four ? (FieldElement::one(tower.l) + sqrt_d) * half : sqrt_d;
  const FieldElement omega_bar = one_mod_four ? FieldElement::one(tower.l) - omega : -omega;
  // h_n / k_n convergents of ω; the first with N(h - k ω̄) = ±1 is fundamental
  BigInt h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (int it = 0; it < 100000; ++it) {
    const BigInt a = (p_cf + root) / q_cf;
    const BigInt h = a * h1 + h2, k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    const FieldElement cand = FieldElement::rational(tower.l, BigRational(h)) -
                              FieldElement::rational(tower.l, BigRational(k)) * omega_bar;
    if (boost::multiprecision::abs(absolute_norm(cand)) == 1) return cand;
    p_cf = a * q_cf - p_cf;
    q_cf = (big_d - p_cf * p_cf) / q_cf;
  }
  fail(ErrorKind::Input, "continued fraction period too long");
}

}  // namespace nfe
