#include "maxmin/rational.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace maxmin {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return z.get_si();
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num));
  mpz_class d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational parse_number(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return parse_rational(text);
  std::string digits(text.substr(0, dot));
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || !is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+') {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  }
  if (digits.empty() || digits == "-" || digits == "+") digits += "0";
  digits += frac;
  return parse_rational(digits + "/1" + std::string(frac.size(), '0'));
}

std::string to_decimal(const Rational& value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value.get_d());
  return buf;
}

double to_double(const Rational& value) { return value.get_d(); }

std::int64_t numerator_i64(const Rational& value) { return to_i64(value.get_num()); }
std::int64_t denominator_i64(const Rational& value) { return to_i64(value.get_den()); }

}  // namespace maxmin
