#include "inclab/rational.hpp"

#include <cctype>
#include <charconv>

#include "inclab/error.hpp"

namespace inclab {

namespace {

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::parse_error, "not a rational number: '" + std::string(text) + "'");
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (s.empty()) bad(whole);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) bad(whole);
  return v;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(s, whole));
  std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
  if (fp.empty() || fp.size() > 18) bad(whole);
  for (char ch : fp) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) bad(whole);
  }
  bool negative = !ip.empty() && ip.front() == '-';
  Rational int_part = (ip.empty() || ip == "-") ? Rational(0) : Rational(parse_int(ip, whole));
  Rational frac(parse_int(fp, whole), pow_int(10, static_cast<unsigned>(fp.size())));
  return negative ? Rational(int_part - frac) : Rational(int_part + frac);
}

Rational parse_power(std::string_view s, std::string_view whole) {
  auto caret = s.find('^');
  if (caret == std::string_view::npos) return parse_decimal(s, whole);
  std::int64_t base = parse_int(s.substr(0, caret), whole);
  std::int64_t exp = parse_int(s.substr(caret + 1), whole);
  if (base == 0 || exp > 512 || exp < -512) bad(whole);
  Rational b(base);
  Rational r = pow_rational(b, static_cast<unsigned>(exp < 0 ? -exp : exp));
  return exp < 0 ? Rational(1) / r : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_power(s.substr(0, slash), text);
    Rational den = parse_power(s.substr(slash + 1), text);
    if (den == 0) bad(text);
    return num / den;
  }
  if (auto star = s.find('*'); star != std::string_view::npos) {
    return parse_power(s.substr(0, star), text) * parse_power(s.substr(star + 1), text);
  }
  return parse_power(s, text);
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

BigInt pow_int(std::uint64_t base, unsigned exp) { return boost::multiprecision::pow(BigInt(base), exp); }

Rational pow_rational(const Rational& base, unsigned exp) {
  Rational result(1);
  for (unsigned i = 0; i < exp; ++i) result *= base;
  return result;
}

}  // namespace inclab
