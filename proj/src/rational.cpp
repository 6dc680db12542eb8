#include "nfe/rational.hpp"

#include "nfe/errors.hpp"

#include <cctype>

namespace nfe {

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const BigRational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den))
    fail(ErrorKind::Input, "malformed rational \"" + std::string(text) + "\"");
  BigInt d = parse_int(den);
  if (d == 0) fail(ErrorKind::Input, "zero denominator in \"" + std::string(text) + "\"");
  return BigRational(parse_int(num), d);
}

BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

BigInt floor(const BigRational& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

}  // namespace nfe
