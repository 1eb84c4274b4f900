#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace qes {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", an integer, or a decimal literal with optional exponent
/// ("0.4", "-1.25e-3") into an exact rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise, always in lowest terms.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational pow(const Rational& base, int exponent);
Integer pow(const Integer& base, int exponent);

/// Scales a vector by the positive rational that makes every entry an
/// integer with overall gcd 1. Sign is preserved. Zero vectors are returned
/// unchanged.
std::vector<Rational> clear_denominators(std::vector<Rational> values);

}  // namespace qes
