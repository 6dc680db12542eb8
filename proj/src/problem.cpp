#include "nfe/problem.hpp"

#include "nfe/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace nfe {

using Json = nlohmann::ordered_json;

namespace {

std::string normalized(const Json& v, const std::string& where) {
  if (v.is_string()) return to_string(parse_rational(v.get<std::string>()));
  if (v.is_number_integer()) return to_string(parse_rational(v.dump()));
  fail(ErrorKind::Input, where + ": coefficients must be rational strings like \"3/4\"");
}

CoeffList coeff_list(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(ErrorKind::Input, where + ": expected a coefficient list");
  CoeffList out;
  for (const auto& c : v) out.push_back(normalized(c, where));
  return out;
}

std::vector<CoeffList> element_list(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(ErrorKind::Input, where + ": expected a list of coefficient lists");
  std::vector<CoeffList> out;
  for (const auto& e : v) out.push_back(coeff_list(e, where));
  return out;
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(ErrorKind::Input, where + ": missing key \"" + key + "\"");
  return obj.at(key);
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) fail(ErrorKind::Input, where + ": unknown key \"" + k + "\"");
  }
}

RationalPoly to_poly(const CoeffList& c) {
  std::vector<BigRational> v;
  for (const auto& s : c) v.push_back(parse_rational(s));
  return RationalPoly(std::move(v));
}

FieldElement to_element(const CoeffList& c, const FieldPtr& field, const std::string& where) {
  if (static_cast<int>(c.size()) > field->degree())
    fail(ErrorKind::Input, where + ": coefficient list longer than the field degree");
  return FieldElement(field, to_poly(c));
}

Json to_json(const CoeffList& c) {
  Json a = Json::array();
  for (const auto& s : c) a.push_back(s);
  return a;
}

Json to_json(const std::vector<CoeffList>& c) {
  Json a = Json::array();
  for (const auto& e : c) a.push_back(to_json(e));
  return a;
}

bool is_rational_field(const FieldTower& t) { return t.f == 1; }

int stated_degree(CoeffList c) {
  while (!c.empty() && c.back() == "0") c.pop_back();
  return static_cast<int>(c.size()) - 1;
}

void check_length(const CoeffList& c, int degree, const std::string& where) {
  if (static_cast<int>(c.size()) > degree)
    fail(ErrorKind::Input, where + ": coefficient list longer than the field degree");
}

void check_lengths(const std::vector<CoeffList>& c, int degree, const std::string& where) {
  for (const auto& e : c) check_length(e, degree, where);
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Input, std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::Input, "problem file must be a JSON object");
  reject_unknown(doc,
                 {"base_field", "extension", "module_basis", "units_l", "units_k", "relative_units", "beta", "mu",
                  "precision_bits", "zeta_mode"},
                 "problem");
  ProblemFile p;
  const Json& base = require(doc, "base_field", "problem");
  reject_unknown(base, {"minpoly", "integral_basis"}, "base_field");
  p.base_minpoly = coeff_list(require(base, "minpoly", "base_field"), "base_field.minpoly");
  p.base_integral_basis = element_list(require(base, "integral_basis", "base_field"), "base_field.integral_basis");
  const Json& ext = require(doc, "extension", "problem");
  reject_unknown(ext, {"minpoly_over_Q", "k_generator_in_l"}, "extension");
  p.ext_minpoly = coeff_list(require(ext, "minpoly_over_Q", "extension"), "extension.minpoly_over_Q");
  p.k_generator_in_l = coeff_list(require(ext, "k_generator_in_l", "extension"), "extension.k_generator_in_l");
  p.module_basis = element_list(require(doc, "module_basis", "problem"), "module_basis");
  if (doc.contains("units_l")) p.units_l = element_list(doc["units_l"], "units_l");
  if (doc.contains("units_k")) p.units_k = element_list(doc["units_k"], "units_k");
  if (doc.contains("relative_units")) p.relative_units = element_list(doc["relative_units"], "relative_units");
  if (doc.contains("beta")) p.beta = coeff_list(doc["beta"], "beta");
  if (doc.contains("mu")) p.mu = coeff_list(doc["mu"], "mu");
  if (doc.contains("precision_bits")) {
    if (!doc["precision_bits"].is_number_integer()) fail(ErrorKind::Input, "precision_bits must be an integer");
    p.precision_bits = doc["precision_bits"].get<long>();
  }
  if (doc.contains("zeta_mode")) {
    if (!doc["zeta_mode"].is_string()) fail(ErrorKind::Input, "zeta_mode must be a string");
    p.zeta_mode = doc["zeta_mode"].get<std::string>();
    if (*p.zeta_mode != "any_torsion" && *p.zeta_mode != "one")
      fail(ErrorKind::Input, "zeta_mode must be \"any_torsion\" or \"one\"");
  }
  const int dk = stated_degree(p.base_minpoly), dl = stated_degree(p.ext_minpoly);
  check_lengths(p.base_integral_basis, dk, "base_field.integral_basis");
  check_length(p.k_generator_in_l, dl, "extension.k_generator_in_l");
  check_lengths(p.module_basis, dl, "module_basis");
  if (p.units_l) check_lengths(*p.units_l, dl, "units_l");
  if (p.units_k) check_lengths(*p.units_k, dk, "units_k");
  if (p.relative_units) check_lengths(*p.relative_units, dl, "relative_units");
  if (p.beta) check_length(*p.beta, dk, "beta");
  if (p.mu) check_length(*p.mu, dl, "mu");
  return p;
}

std::string serialize_problem(const ProblemFile& p) {
  Json doc;
  doc["base_field"]["minpoly"] = to_json(p.base_minpoly);
  doc["base_field"]["integral_basis"] = to_json(p.base_integral_basis);
  doc["extension"]["minpoly_over_Q"] = to_json(p.ext_minpoly);
  doc["extension"]["k_generator_in_l"] = to_json(p.k_generator_in_l);
  doc["module_basis"] = to_json(p.module_basis);
  if (p.units_l) doc["units_l"] = to_json(*p.units_l);
  if (p.units_k) doc["units_k"] = to_json(*p.units_k);
  if (p.relative_units) doc["relative_units"] = to_json(*p.relative_units);
  if (p.beta) doc["beta"] = to_json(*p.beta);
  if (p.mu) doc["mu"] = to_json(*p.mu);
  if (p.precision_bits) doc["precision_bits"] = *p.precision_bits;
  if (p.zeta_mode) doc["zeta_mode"] = *p.zeta_mode;
  return doc.dump(2) + "\n";
}

Problem load_problem(const ProblemFile& file, std::optional<long> precision_override) {
  Problem p;
  p.file = file;
  p.precision_bits = precision_override.value_or(file.precision_bits.value_or(128));
  if (p.precision_bits < 64 || p.precision_bits > 1 << 16) fail(ErrorKind::Input, "precision_bits must lie in [64, 65536]");
  std::vector<RationalPoly> psi;
  for (const auto& c : file.base_integral_basis) psi.push_back(to_poly(c));
  p.tower = build_tower(to_poly(file.base_minpoly), to_poly(file.ext_minpoly), to_poly(file.k_generator_in_l), psi,
                        p.precision_bits);
  std::vector<FieldElement> omega;
  for (const auto& c : file.module_basis) omega.push_back(to_element(c, p.tower->l, "module_basis"));
  p.module = build_module(p.tower, std::move(omega));
  if (file.beta) p.beta = to_element(*file.beta, p.tower->k, "beta");
  if (file.mu) p.mu = to_element(*file.mu, p.tower->l, "mu");
  p.zeta_mode = file.zeta_mode.value_or("any_torsion") == "one" ? ZetaMode::One : ZetaMode::AnyTorsion;
  return p;
}

RelativeUnitSystem problem_units(const Problem& p) {
  const FieldTower& t = *p.tower;
  auto elements = [](const std::vector<CoeffList>& list, const FieldPtr& f, const std::string& where) {
    std::vector<FieldElement> out;
    for (const auto& c : list) out.push_back(to_element(c, f, where));
    return out;
  };
  if (p.file.relative_units) return relative_units_from(p.module, elements(*p.file.relative_units, t.l, "relative_units"));

  const int r_l = static_cast<int>(archimedean_places(t, FieldTag::L).size()) - 1;
  const int r_k = static_cast<int>(archimedean_places(t, FieldTag::K).size()) - 1;
  std::vector<FieldElement> units_l, units_k;
  if (p.file.units_l) {
    units_l = elements(*p.file.units_l, t.l, "units_l");
  } else if (r_l > 0) {
    if (!(is_rational_field(t) && t.e == 2 && r_l == 1))
      fail(ErrorKind::Input, "units_l is required unless l is real quadratic over Q");
    units_l.push_back(real_quadratic_fundamental_unit(t));
  }
  if (p.file.units_k) {
    units_k = elements(*p.file.units_k, t.k, "units_k");
  } else if (r_k > 0) {
    fail(ErrorKind::Input, "units_k is required when k has positive unit rank");
  }
  return relative_units(p.module, units_l, units_k);
}

FieldElement parse_element(const std::string& text, const FieldPtr& field) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(ErrorKind::Input, "empty element");
  if (s.front() == '[') {
    if (s.back() != ']') fail(ErrorKind::Input, "unterminated coefficient list: " + text);
    std::vector<BigRational> coords;
    std::stringstream in(s.substr(1, s.size() - 2));
    for (std::string item; std::getline(in, item, ',');) coords.push_back(parse_rational(item));
    return FieldElement::from_coordinates(field, coords);
  }
  const std::vector<std::string> symbols = field->tag == FieldTag::L
                                               ? std::vector<std::string>{"theta", "\xCE\xB8", "t"}
                                               : std::vector<std::string>{"phi", "\xCF\x86", "p"};
  RationalPoly acc;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      fail(ErrorKind::Input, "malformed element: " + text);
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) fail(ErrorKind::Input, "malformed element: " + text);

    std::size_t at = std::string::npos, len = 0;
    for (const auto& sym : symbols) {
      std::size_t f = term.find(sym);
      if (f != std::string::npos && (f < at || (f == at && sym.size() > len))) {
        at = f;
        len = sym.size();
      }
    }
    BigRational coef(1);
    int power = 0;
    if (at == std::string::npos) {
      coef = parse_rational(term);
    } else {
      std::string c = term.substr(0, at);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (!c.empty()) coef = parse_rational(c);
      std::string rest = term.substr(at + len);
      power = 1;
      if (!rest.empty()) {
        if (rest[0] != '^' || rest.size() == 1 || rest.find_first_not_of("0123456789", 1) != std::string::npos)
          fail(ErrorKind::Input, "malformed exponent in element: " + text);
        power = std::stoi(rest.substr(1));
      }
    }
    std::vector<BigRational> mono(static_cast<std::size_t>(power) + 1);
    mono.back() = negative ? BigRational(-coef) : coef;
    acc = acc + RationalPoly(std::move(mono));
  }
  return FieldElement(field, acc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace nfe
