#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace maxmin {

/// Exact arbitrary-precision fraction. Always kept in lowest terms.
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws std::domain_error when den == 0.
Rational make_rational(std::int64_t num, std::int64_t den);

/// Renders as "p/q" (integers as "p/1").
std::string to_string(const Rational& value);

/// Accepts "p/q" or "p"; rejects anything else with std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Like parse_rational but also accepts plain decimals such as "12.5", converted exactly.
Rational parse_number(std::string_view text);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Rational& value, int significant_digits = 6);

double to_double(const Rational& value);

/// Numerator and denominator as 64-bit integers; throws std::overflow_error if they do not fit.
std::int64_t numerator_i64(const Rational& value);
std::int64_t denominator_i64(const Rational& value);

}  // namespace maxmin
