// nfe: command-line front end.
//
//   nfe height <problem.json> <element>
//   nfe reduce <problem.json>
//   nfe solve  <problem.json> [--coeff-bound N]
//   nfe units  <problem.json>
//   nfe verify <problem.json>
//
// Exit codes: 0 ok, 2 input error, 3 not a solution, 4 precision failure,
// 5 verification failure.

#include "nfe/errors.hpp"
#include "nfe/problem.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>

using namespace nfe;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 2, kExitNotSolution = 3, kExitPrecision = 4, kExitVerification = 5;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return kExitInput;
    case ErrorKind::NotASolution: return kExitNotSolution;
    case ErrorKind::Precision: return kExitPrecision;
    case ErrorKind::Verification:
    case ErrorKind::Internal: return kExitVerification;
  }
  return kExitVerification;
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::NotASolution: return "not a solution";
    case ErrorKind::Precision: return "precision failure";
    case ErrorKind::Verification: return "verification failure";
    case ErrorKind::Internal: return "internal error";
  }
  return "error";
}

std::string real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json reals(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(real(v(i)));
  return a;
}

Json coords(const RationalVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v(i)));
  return a;
}

Json element(const FieldElement& x, const FullModule* m = nullptr) {
  Json j;
  j["text"] = x.str();
  j["power_coords"] = coords(x.coordinates());
  if (m && x.owner() == FieldTag::L) j["module_coords"] = coords(module_contains(*m, x).coords);
  return j;
}

Json tower_summary(const FieldTower& t) {
  Json j;
  j["degree_k"] = t.f;
  j["degree_l"] = t.e * t.f;
  j["relative_degree"] = t.e;
  auto [k1, k2] = signature(t, FieldTag::K);
  auto [l1, l2] = signature(t, FieldTag::L);
  j["signature_k"] = {k1, k2};
  j["signature_l"] = {l1, l2};
  Json fibers = Json::array();
  for (const auto& f : place_fibers(t)) {
    Json members = Json::array();
    for (const auto& w : f.members) members.push_back(w.index);
    fibers.push_back({{"place_k", f.v.index}, {"real", f.v.is_real}, {"places_l", members}});
  }
  j["place_fibers"] = fibers;
  return j;
}

Json ranks(const RankTriple& r) { return {{"r_l", r.r_l}, {"r_k", r.r_k}, {"r_rel", r.r_rel}}; }

Json unit_system(const RelativeUnitSystem& sys) {
  Json j;
  Json eps = Json::array();
  for (std::size_t i = 0; i < sys.epsilons.size(); ++i) {
    Json e = element(sys.epsilons[i], &sys.module);
    e["height"] = real(sys.heights[i]);
    eps.push_back(e);
  }
  j["epsilons"] = eps;
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < sys.log_matrix.rows(); ++r) rows.push_back(reals(sys.log_matrix.row(r).transpose()));
  j["log_matrix"] = rows;
  Json tor = Json::array();
  for (const auto& z : sys.torsion_k) tor.push_back(z.str());
  j["torsion_k"] = tor;
  j["ranks"] = ranks(sys.ranks);
  return j;
}

Json reduction(const ReductionReport& r, const FullModule& m) {
  Json j;
  j["mu_in"] = element(r.mu_in, &m);
  j["gamma"] = element(r.gamma, &m);
  j["mu_out"] = element(r.mu_out, &m);
  j["representative"] = element(r.representative, &m);
  j["zeta"] = r.zeta.str();
  j["zeta_prime"] = r.zeta_prime.str();
  j["z"] = reals(r.z.coords);
  j["u"] = reals(r.u);
  j["m"] = r.m;
  j["discrepancy"] = real(r.discrepancy);
  j["height_in"] = real(r.height_in);
  j["height_out"] = real(r.height_out);
  j["height_beta"] = real(r.height_beta);
  j["bound"] = real(r.bound);
  j["bound_satisfied"] = r.bound_satisfied;
  if (r.cm) j["rank_zero_identity"] = {{"h_mu", real(r.cm->h_mu)}, {"h_beta_over_e", real(r.cm->h_beta_over_e)}, {"equal", r.cm->equal}};
  return j;
}

struct Options {
  std::string problem_path;
  std::string element_text;
  std::optional<long> precision_bits;
  long coeff_bound = 10;
  std::string zeta_mode;
  std::string output;
};

Problem load(const Options& o) {
  ProblemFile file = parse_problem(read_file(o.problem_path));
  if (o.zeta_mode == "one") file.zeta_mode = "one";
  else if (o.zeta_mode == "any") file.zeta_mode = "any_torsion";
  return load_problem(file, o.precision_bits);
}

int cmd_height(const Problem& p, const Options& o, Json& out) {
  const FieldElement x = parse_element(o.element_text, p.tower->l);
  out["element"] = element(x, &p.module);
  out["height"] = real(weil_height(x));
  out["log_vector"] = reals(archimedean_log_vector(*p.tower, x));
  return 0;
}

int cmd_reduce(const Problem& p, const Options&, Json& out) {
  if (!p.beta || !p.mu) fail(ErrorKind::Input, "reduce needs both mu and beta in the problem file");
  const RelativeUnitSystem sys = problem_units(p);
  out["ranks"] = ranks(sys.ranks);
  out["units"] = unit_system(sys);
  const ReductionReport r = reduce_solution(*p.mu, *p.beta, sys);
  out["reduction"] = reduction(r, p.module);
  if (r.cm && !r.cm->equal) return kExitVerification;
  return r.bound_satisfied ? 0 : kExitVerification;
}

int cmd_solve(const Problem& p, const Options& o, Json& out) {
  if (!p.beta) fail(ErrorKind::Input, "solve needs beta in the problem file");
  const RelativeUnitSystem sys = problem_units(p);
  out["ranks"] = ranks(sys.ranks);
  const NormFormPoly f = norm_form_poly(p.module);
  out["norm_form"] = f.str();
  SolutionSet set = enumerate_solutions(p.module, *p.beta, o.coeff_bound, sys.torsion_k, p.zeta_mode);
  partition_classes(set, sys);
  Json sols = Json::array();
  for (const auto& s : set.solutions) {
    Json j = element(s.mu, &p.module);
    j["zeta"] = s.zeta.str();
    sols.push_back(j);
  }
  Json classes = Json::array();
  for (const auto& c : set.classes) {
    Json j;
    j["members"] = c.members;
    j["representative"] = element(c.representative, &p.module);
    j["representative_height"] = real(c.representative_height);
    j["bound"] = real(c.bound);
    classes.push_back(j);
  }
  out["search_box"] = {{"coeff_bound", set.search_box}, {"coordinates", p.module.z_rank()}};
  out["solution_count"] = set.solutions.size();
  out["solutions"] = sols;
  out["class_count"] = set.classes.size();
  out["classes"] = classes;
  return 0;
}

int cmd_units(const Problem& p, const Options&, Json& out) {
  const RelativeUnitSystem sys = problem_units(p);
  out["ranks"] = ranks(verify_rank(sys));
  out["units"] = unit_system(sys);
  Json tor_l = Json::array();
  for (const auto& z : torsion_units(*p.tower, FieldTag::L)) tor_l.push_back(z.str());
  out["torsion_l"] = tor_l;
  Json ring = Json::array();
  for (const auto& b : coefficient_ring(p.module).ring_z_basis) ring.push_back(element(b));
  out["coefficient_ring"] = ring;
  return 0;
}

int cmd_verify(const Problem& p, const Options&, Json& out) {
  Json checks = Json::array();
  std::string first_failure;
  auto record = [&](const std::string& name, const std::function<std::string()>& check) {
    std::string detail;
    try {
      detail = check();
    } catch (const Error& e) {
      detail = e.what();
      if (detail.empty()) detail = "failed";
    }
    const bool pass = detail.empty();
    checks.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
    if (!pass && first_failure.empty()) first_failure = name + ": " + detail;
    return pass;
  };

  std::optional<RelativeUnitSystem> sys;
  record("relative unit construction", [&] {
    sys = problem_units(p);
    return std::string();
  });
  if (sys) {
    const FieldTower& t = *p.tower;
    record("rank certificate", [&] {
      out["ranks"] = ranks(verify_rank(*sys));
      return std::string();
    });
    record("coefficient ring", [&] {
      coefficient_ring(p.module);
      return std::string();
    });
    record("relative units preserve the module", [&] {
      for (const auto& e : sys->epsilons) {
        if (!is_module_unit(p.module, e)) return "eps*M != M for " + e.str();
        if (torsion_index(sys->torsion_k, relative_norm(t, e).value) < 0) return "non-torsion norm for " + e.str();
      }
      return std::string();
    });
    record("fiber sums of unit logs", [&] {
      for (Eigen::Index j = 0; j < sys->log_matrix.cols(); ++j)
        for (const auto& f : place_fibers(t)) {
          double s = 0;
          for (const auto& w : f.members) s += sys->log_matrix(w.index, j);
          if (std::abs(s) > 1e-9) return "column " + std::to_string(j) + " sums to " + real(s);
        }
      return std::string();
    });
    std::mt19937_64 rng(20240611);
    const double hsum = sys->height_sum();
    if (!sys->epsilons.empty()) {
      record("unit rounding discrepancy (100 trials)", [&] {
        std::uniform_real_distribution<double> coef(-6.0, 6.0);
        for (int trial = 0; trial < 100; ++trial) {
          Eigen::VectorXd c(sys->log_matrix.cols());
          for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = coef(rng);
          BalancedSubspaceVector z{sys->log_matrix * c, {}};
          const double d = round_to_unit(z, *sys).discrepancy;
          if (d > hsum + 1e-9) return "discrepancy " + real(d) + " exceeds " + real(hsum);
        }
        return std::string();
      });
      record("fiber deviation after rounding (100 trials)", [&] {
        std::uniform_int_distribution<long> coef(-20, 20);
        for (int trial = 0; trial < 100; ++trial) {
          FieldElement mu = FieldElement::zero(t.l);
          for (const auto& b : p.module.z_basis) mu += t.l_rational(BigRational(coef(rng))) * b;
          if (mu.is_zero()) continue;
          const FieldElement gamma = round_to_unit(balance_vector(mu, *sys), *sys).gamma;
          const double dev = fiber_deviation(gamma * mu, *sys);
          if (dev > hsum + 1e-9) return "deviation " + real(dev) + " exceeds " + real(hsum);
        }
        return std::string();
      });
    }
    if (p.mu && p.beta) {
      if (sys->epsilons.empty()) {
        record("rank-zero height identity", [&] {
          const CmIdentity id = cm_height_identity(*p.mu, *p.beta, *sys);
          out["rank_zero_identity"] = {{"h_mu", real(id.h_mu)}, {"h_beta_over_e", real(id.h_beta_over_e)}, {"equal", id.equal}};
          return id.equal ? std::string() : "h(mu) = " + real(id.h_mu) + " but h(beta)/e = " + real(id.h_beta_over_e);
        });
      } else {
        record("reduction height bound", [&] {
          const ReductionReport r = reduce_solution(*p.mu, *p.beta, *sys);
          return r.bound_satisfied ? std::string() : "height " + real(r.height_out) + " exceeds " + real(r.bound);
        });
      }
    }
  }
  out["checks"] = checks;
  out["all_passed"] = first_failure.empty();
  if (!first_failure.empty()) {
    std::cerr << "verification failure: " << first_failure << "\n";
    return kExitVerification;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norm form equations: heights, reduction by relative units, and bounded solution search"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--precision-bits", o.precision_bits, "working precision in bits (default 128 or the problem file)");
  app.add_option("--coeff-bound", o.coeff_bound, "coordinate bound for solve")->check(CLI::PositiveNumber);
  app.add_option("--zeta-mode", o.zeta_mode, "accept any torsion factor or only zeta = 1")->check(CLI::IsMember({"any", "one"}));
  app.add_option("--output", o.output, "write the report here instead of stdout");

  using Handler = int (*)(const Problem&, const Options&, Json&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("problem", o.problem_path, "problem file")->required();
    sub->fallthrough();
    commands.emplace_back(sub, h);
    return sub;
  };
  add("height", "Weil height and archimedean log vector of an element of l", cmd_height)
      ->add_option("element", o.element_text, "element such as \"13+9θ\" or \"[13, 9]\"")
      ->required();
  add("reduce", "reduce mu by relative units and certify the height bound", cmd_reduce);
  add("solve", "enumerate solutions in a coordinate box and split them into classes", cmd_solve);
  add("units", "relative units, torsion, and the coefficient ring", cmd_units);
  add("verify", "run the invariant checks on the problem instance", cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Json report;
  int code = 0;
  try {
    const Problem p = load(o);
    for (const auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      report["command"] = sub->get_name();
      report["input"] = Json::parse(serialize_problem(p.file));
      report["precision_bits"] = p.precision_bits;
      report["tower"] = tower_summary(*p.tower);
      Json result;
      code = handler(p, o, result);
      for (auto& [k, v] : result.items()) report[k] = v;
    }
  } catch (const Error& e) {
    std::cerr << kind_name(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerification;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report["timing_ms"] = real(ms);

  const std::string text = report.dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.output);
    if (!f) {
      std::cerr << "input error: cannot write " << o.output << "\n";
      return kExitInput;
    }
    f << text;
  }
  return code;
}
