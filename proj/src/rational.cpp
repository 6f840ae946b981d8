#include "groupmms/rational.hpp"

#include <bit>
#include <cctype>

#include "groupmms/errors.hpp"

namespace groupmms {

std::string format_rational(const Rational& r) {
  return r.numerator().str() + "/" + r.denominator().str();
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(const std::string& s, const std::string& context) {
  std::string body = s;
  bool negative = false;
  if (!body.empty() && body[0] == '-') {
    negative = true;
    body = body.substr(1);
  }
  if (!all_digits(body)) fail(Errc::parse_error, "not an integer: '" + s + "' in " + context);
  BigInt value(body);
  return negative ? -value : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_integer(text, "rational"), BigInt(1));
  }
  const BigInt num = parse_integer(text.substr(0, slash), "rational '" + text + "'");
  const std::string den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) {
    fail(Errc::parse_error, "denominator must be a positive integer in '" + text + "'");
  }
  const BigInt den(den_text);
  if (den == 0) fail(Errc::parse_error, "zero denominator in '" + text + "'");
  return Rational(num, den);
}

double to_double(const Rational& r) {
  return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

Rational pow_rational(Rational base, std::uint64_t exp) {
  Rational result(1);
  while (exp > 0) {
    if (exp & 1) result *= base;
    exp >>= 1;
    if (exp > 0) base *= base;
  }
  return result;
}

BigInt ceil_rational(const Rational& r) {
  BigInt q = r.numerator() / r.denominator();
  if (r.numerator() > 0 && r.numerator() % r.denominator() != 0) ++q;
  return q;
}

int ceil_log2(std::uint64_t x) {
  if (x <= 1) return 0;
  const int floor_log = 63 - std::countl_zero(x);
  return std::has_single_bit(x) ? floor_log : floor_log + 1;
}

}  // namespace groupmms
