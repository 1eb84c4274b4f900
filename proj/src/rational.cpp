#include "qes/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qes {

namespace {

bool all_digits(std::string_view s)
{
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s)
{
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  Integer v{std::string(s)};
  return negative ? Integer(-v) : v;
}

Rational parse_decimal(std::string_view text)
{
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    auto exp_value = parse_integer(exp_text);
    if (abs(exp_value) > 100000) throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
    exponent = exp_value.convert_to<long>();
    s = s.substr(0, e);
  }

  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";

  Rational value{Integer(digits)};
  Integer ten_pow = pow(Integer(10), static_cast<int>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) {
    value *= Rational(ten_pow);
  } else {
    value /= Rational(ten_pow);
  }
  return negative ? Rational(-value) : value;
}

std::string trim(std::string_view s)
{
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Rational parse_rational(std::string_view raw)
{
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string::npos) {
    Integer num = parse_integer(trim(std::string_view(text).substr(0, slash)));
    Integer den = parse_integer(trim(std::string_view(text).substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& value)
{
  const auto num = numerator(value);
  const auto den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value)
{
  return value.convert_to<double>();
}

Rational pow(const Rational& base, int exponent)
{
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  Rational result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

Integer pow(const Integer& base, int exponent)
{
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  Integer result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

std::vector<Rational> clear_denominators(std::vector<Rational> values)
{
  Integer lcm_den = 1;
  Integer gcd_num = 0;
  for (const auto& v : values) {
    lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(v)));
    gcd_num = boost::multiprecision::gcd(gcd_num, Integer(abs(numerator(v))));
  }
  if (gcd_num == 0) return values;
  const Rational scale(lcm_den, gcd_num);
  for (auto& v : values) v *= scale;
  return values;
}

}  // namespace qes
