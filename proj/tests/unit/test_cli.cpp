#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nfe/errors.hpp"
#include "nfe/problem.hpp"

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nfe;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = NFE_CLI_PATH;
const fs::path kProblems = NFE_PROBLEMS_DIR;

struct Run {
  int code = -1;
  std::string out, err;
};

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("nfe_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch("stdout"), err = scratch("stderr");
  const std::string cmd = "'" + kCli + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string problem(const std::string& name) { return "'" + (kProblems / name).string() + "'"; }

std::string squeeze(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

double num(const json& v) { return std::stod(v.get<std::string>()); }

// exact fields compare equal, decimal-string reals within tol
void compare_reports(const json& a, const json& b, const std::string& path = "") {
  CAPTURE(path);
  if (path == "/timing_ms") return;
  REQUIRE(a.type() == b.type());
  if (a.is_object()) {
    REQUIRE(a.size() == b.size());
    for (auto it = a.begin(); it != a.end(); ++it) {
      REQUIRE(b.contains(it.key()));
      compare_reports(*it, b[it.key()], path + "/" + it.key());
    }
  } else if (a.is_array()) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) compare_reports(a[i], b[i], path + "/" + std::to_string(i));
  } else if (a.is_string() && a != b) {
    // reals are printed with 12 significant digits
    CHECK(std::abs(num(a) - num(b)) < 1e-9);
  } else {
    CHECK(a == b);
  }
}

}  // namespace

TEST_CASE("problem files round-trip through parse and serialize") {
  int files = 0;
  for (const auto& entry : fs::directory_iterator(kProblems)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    ++files;
    const std::string text = slurp(entry.path());
    const ProblemFile p = parse_problem(text);
    const std::string again = serialize_problem(p);
    CHECK(squeeze(again) == squeeze(text));
    CHECK(serialize_problem(parse_problem(again)) == again);
  }
  CHECK(files >= 8);
}

TEST_CASE("problem parsing is strict") {
  const std::string base = slurp(kProblems / "pell.json");
  CHECK_NOTHROW(parse_problem(base));
  auto mutate = [&](auto f) {
    json j = json::parse(base);
    f(j);
    return j.dump();
  };
  CHECK_THROWS_AS(parse_problem(mutate([](json& j) { j["colour"] = "red"; })), Error);
  CHECK_THROWS_AS(parse_problem(mutate([](json& j) { j["beta"] = json::array({"7/0"}); })), Error);
  CHECK_THROWS_AS(parse_problem(mutate([](json& j) { j["mu"] = json::array({"1", "2", "3"}); })), Error);
  CHECK_THROWS_AS(parse_problem(mutate([](json& j) { j.erase("module_basis"); })), Error);
  CHECK_THROWS_AS(parse_problem(mutate([](json& j) { j["zeta_mode"] = "sometimes"; })), Error);
  CHECK_THROWS_AS(parse_problem("{not json"), Error);
  // integers and unreduced fractions are normalized
  auto p = parse_problem(mutate([](json& j) { j["beta"] = json::array({14}); j["mu"] = json::array({"26/2", "9"}); }));
  CHECK(p.beta == CoeffList{"14"});
  CHECK(p.mu == CoeffList{"13", "9"});
}

TEST_CASE("element syntax") {
  const Problem p = load_problem(parse_problem(slurp(kProblems / "quartic.json")));
  const auto& l = p.tower->l;
  const FieldElement want(l, RationalPoly({BigRational(3), BigRational(1), BigRational(0), BigRational(-1, 2)}));
  CHECK(parse_element("[3, 1, 0, -1/2]", l) == want);
  CHECK(parse_element("3 + θ - 1/2*θ^3", l) == want);
  CHECK(parse_element("3+t-1/2*t^3", l) == want);
  CHECK(parse_element("theta - 1/2*theta^3 + 3", l) == want);
  CHECK(parse_element("phi + 1", p.tower->k) == FieldElement(p.tower->k, RationalPoly({BigRational(1), BigRational(1)})));
  CHECK_THROWS_AS(parse_element("3 + x", l), Error);
  CHECK_THROWS_AS(parse_element("[1, 2", l), Error);
  CHECK_THROWS_AS(parse_element("", l), Error);
}

TEST_CASE("height command") {
  auto r = run("height " + problem("pell.json") + " '1+θ'");
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  json j = json::parse(r.out);
  CHECK(num(j["height"]) == doctest::Approx(0.440687).epsilon(1e-6));
  CHECK(num(j["log_vector"][0]) == doctest::Approx(0.440687).epsilon(1e-6));
  CHECK(num(json::parse(run("height " + problem("pell.json") + " 1").out)["height"]) == 0.0);
  CHECK(num(json::parse(run("height " + problem("pell.json") + " '13+9θ'").out)["height"]) ==
        doctest::Approx(1.62379).epsilon(1e-5));
  CHECK(run("height " + problem("pell.json") + " 0").code == 2);
  CHECK(run("height " + problem("pell.json") + " 'banana'").code == 2);
}

TEST_CASE("reduce command") {
  auto r = run("reduce " + problem("pell.json"));
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["reduction"]["mu_out"]["module_coords"] == json::array({"-1", "2"}));
  CHECK(j["reduction"]["bound_satisfied"] == true);
  CHECK(num(j["reduction"]["height_out"]) == doctest::Approx(0.5 * std::log(7.0)).epsilon(1e-11));

  auto g = run("reduce " + problem("gaussian.json"));
  REQUIRE(g.code == 0);
  json jg = json::parse(g.out);
  CHECK(jg["reduction"]["rank_zero_identity"]["equal"] == true);

  auto bad = run("reduce " + problem("not_solution.json"));
  CHECK(bad.code == 3);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("not a solution") != std::string::npos);

  CHECK(run("reduce " + problem("pell_beta3.json")).code == 2);
  CHECK(run("reduce /nonexistent/problem.json").code == 2);
  CHECK(run("frobnicate " + problem("pell.json")).code == 2);
}

TEST_CASE("solve command") {
  auto r = run("solve " + problem("pell.json") + " --coeff-bound 13");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["class_count"] == 2);
  CHECK(j["solution_count"] == j["solutions"].size());
  CHECK(j["norm_form"] == "x1^2 - 2*x2^2");
  auto g = run("solve " + problem("gaussian.json") + " --coeff-bound 2");
  REQUIRE(g.code == 0);
  CHECK(json::parse(g.out)["class_count"] == 1);
  auto e = run("solve " + problem("pell_beta3.json") + " --coeff-bound 20");
  REQUIRE(e.code == 0);
  json je = json::parse(e.out);
  CHECK(je["class_count"] == 0);
  CHECK(je["solutions"].empty());
  CHECK(run("solve " + problem("pell.json") + " --coeff-bound 100000").code == 2);
  auto one = run("solve " + problem("pell.json") + " --coeff-bound 5 --zeta-mode one");
  REQUIRE(one.code == 0);
  for (const auto& s : json::parse(one.out)["solutions"]) CHECK(s["zeta"] == "1");
}

TEST_CASE("units and verify commands") {
  auto u = run("units " + problem("pell_nonmaximal.json"));
  REQUIRE(u.code == 0);
  json ju = json::parse(u.out);
  CHECK(ju["units"]["epsilons"][0]["power_coords"] == json::array({"3", "2"}));

  for (const char* f : {"pell.json", "pell_nonmaximal.json", "gaussian.json", "zeta5.json", "quartic.json"}) {
    CAPTURE(f);
    auto v = run(std::string("verify ") + problem(f));
    CHECK(v.code == 0);
    CHECK(json::parse(v.out)["all_passed"] == true);
  }
  auto d = run("verify " + problem("dependent_units.json"));
  CHECK(d.code == 5);
  CHECK(d.err.find("supplied units not independent") != std::string::npos);
}

TEST_CASE("precision flag and output file") {
  const fs::path out = scratch("report.json");
  fs::remove(out);
  auto r = run("reduce " + problem("quartic.json") + " --precision-bits 256 --output '" + out.string() + "'");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  json j = json::parse(slurp(out));
  CHECK(j["precision_bits"] == 256);
  auto lo = json::parse(run("reduce " + problem("quartic.json") + " --precision-bits 64").out);
  CHECK(num(lo["reduction"]["height_out"]) == doctest::Approx(num(j["reduction"]["height_out"])).epsilon(1e-9));
  CHECK(run("reduce " + problem("quartic.json") + " --precision-bits 8").code == 2);
}

TEST_CASE("reports reproduce from their echoed input") {
  for (const char* cmd : {"reduce pell.json", "reduce zeta5.json", "solve pell.json --coeff-bound 6", "units quartic.json",
                          "verify pell_nonmaximal.json"}) {
    CAPTURE(cmd);
    std::string c(cmd);
    const auto space = c.find(' '), rest = c.find(' ', space + 1);
    const std::string verb = c.substr(0, space);
    const std::string file = c.substr(space + 1, rest == std::string::npos ? std::string::npos : rest - space - 1);
    const std::string flags = rest == std::string::npos ? "" : c.substr(rest);
    auto first = run(verb + " " + problem(file) + flags);
    REQUIRE(first.code == 0);
    json a = json::parse(first.out);
    const fs::path echo = scratch("echo.json");
    std::ofstream(echo) << a["input"].dump(2);
    auto second = run(verb + " '" + echo.string() + "'" + flags);
    REQUIRE(second.code == 0);
    compare_reports(a, json::parse(second.out));
  }
}
