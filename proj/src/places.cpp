#include "nfe/places.hpp"

#include "nfe/errors.hpp"

#include <algorithm>

namespace nfe {

namespace {

const std::vector<ComplexApprox>& embeddings(const FieldTower& tower, FieldTag field) {
  return field == FieldTag::L ? tower.embeddings_l : tower.embeddings_k;
}

// place index of every embedding (both members of a pair map to one place)
std::vector<int> place_of_embedding(const std::vector<ComplexApprox>& emb) {
  std::vector<int> out(emb.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < emb.size(); ++i) {
    if (out[i] >= 0) continue;
    out[i] = next;
    if (!emb[i].is_real()) {
      for (std::size_t j = i + 1; j < emb.size(); ++j)
        if (out[j] < 0 && !emb[j].is_real() && emb[j].value.re == emb[i].value.re &&
            emb[j].value.im == -emb[i].value.im) {
          out[j] = next;
          break;
        }
    }
    ++next;
  }
  return out;
}

void check_companion(const Real& coarse, const Real& fine, long precision_bits) {
  Real gap = abs(with_precision(coarse, fine.precision()) - fine);
  if (gap > Real::exp2(-precision_bits / 4, fine.precision()))
    fail(ErrorKind::Precision, "working and 2x-precision values disagree; raise precision");
}

// log M(q) for a squarefree primitive q, at working and 2x precision
std::pair<Real, Real> log_mahler(const IntPoly& q, long precision_bits) {
  const mpfr_prec_t p = precision_bits, p2 = 2 * precision_bits;
  if (q.size() == 2) {
    // rational root: log max(|q0|, |q1|)
    BigInt m = std::max(boost::multiprecision::abs(q[0]), boost::multiprecision::abs(q[1]));
    return {log(Real(m, p)), log(Real(m, p2))};
  }
  Real sum_p = log(Real(q.back(), p)), sum_2p = log(Real(q.back(), p2));
  const Real slack = Real::exp2(-(2 * precision_bits - 8), p2);
  const Real one(1.0, p2);
  for (const auto& r : poly_complex_roots(q, precision_bits)) {
    Real modulus_fine = abs(r.refined);
    if (abs(modulus_fine - one) <= r.error_radius + slack) continue;
    if (modulus_fine < one) continue;
    sum_p += log(abs(r.value));
    sum_2p += log(modulus_fine);
  }
  return {sum_p, sum_2p};
}

}  // namespace

std::vector<Place> archimedean_places(const FieldTower& tower, FieldTag field) {
  const auto& emb = embeddings(tower, field);
  const auto owner = place_of_embedding(emb);
  const int d = static_cast<int>(emb.size());
  std::vector<Place> out;
  for (std::size_t i = 0; i < emb.size(); ++i) {
    if (owner[i] != static_cast<int>(out.size())) continue;
    Place w;
    w.field_tag = field;
    w.index = owner[i];
    w.is_real = emb[i].is_real();
    w.d_w = w.is_real ? 1 : 2;
    w.d = d;
    w.embedding = static_cast<int>(i);
    w.root = emb[i];
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<PlaceFiber> place_fibers(const FieldTower& tower) {
  auto places_k = archimedean_places(tower, FieldTag::K);
  auto places_l = archimedean_places(tower, FieldTag::L);
  const auto k_place = place_of_embedding(tower.embeddings_k);
  std::vector<PlaceFiber> out;
  for (auto& v : places_k) out.push_back({v, {}});
  for (auto& w : places_l) {
    int kv = k_place[static_cast<std::size_t>(tower.fiber_of[static_cast<std::size_t>(w.embedding)])];
    out[static_cast<std::size_t>(kv)].members.push_back(w);
  }
  return out;
}

double log_abs(const FieldElement& alpha, const Place& w) {
  if (alpha.is_zero()) fail(ErrorKind::Input, "log of zero");
  if (alpha.owner() != w.field_tag) fail(ErrorKind::Input, "place belongs to a different field");
  const long bits = alpha.field()->precision_bits;
  Real coarse = abs(evaluate_at(alpha, w.root.value));
  Real fine = abs(evaluate_at(alpha, w.root.refined));
  if (coarse.is_zero() || fine.is_zero()) fail(ErrorKind::Precision, "nonzero element evaluates to zero; raise precision");
  const Real scale(static_cast<double>(w.d_w) / static_cast<double>(w.d), 2 * bits);
  Real lc = scale * log(coarse), lf = scale * log(fine);
  check_companion(lc, lf, bits);
  return lf.to_double();
}

Eigen::VectorXd archimedean_log_vector(const FieldTower& tower, const FieldElement& alpha) {
  auto places = archimedean_places(tower, alpha.owner());
  Eigen::VectorXd out(static_cast<Eigen::Index>(places.size()));
  for (std::size_t i = 0; i < places.size(); ++i) out(static_cast<Eigen::Index>(i)) = log_abs(alpha, places[i]);
  return out;
}

double weil_height(const FieldElement& alpha) {
  if (alpha.is_zero()) fail(ErrorKind::Input, "height of zero is undefined");
  const long bits = alpha.field()->precision_bits;
  const RationalPoly cp = char_poly(alpha);
  Real total_p(0.0, bits), total_2p(0.0, 2 * bits);
  for (const auto& [factor, multiplicity] : squarefree_decomposition(cp)) {
    auto [lp, l2p] = log_mahler(primitive_part(factor).poly, bits);
    total_p += Real(static_cast<long>(multiplicity), bits) * lp;
    total_2p += Real(static_cast<long>(multiplicity), 2 * bits) * l2p;
  }
  const Real degree(static_cast<long>(cp.degree()), 2 * bits);
  Real hp = total_p / degree, h2p = total_2p / degree;
  check_companion(hp, h2p, bits);
  return h2p.to_double();
}

std::pair<int, int> signature(const FieldTower& tower, FieldTag field) {
  int r1 = 0, r2 = 0;
  for (const auto& w : archimedean_places(tower, field)) (w.is_real ? r1 : r2) += 1;
  return {r1, r2};
}

}  // namespace nfe
