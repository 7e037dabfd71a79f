#include "ctl/rational.hpp"

#include "ctl/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace ctl {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  Integer value(std::string(s), 10);
  return negative ? Integer(-value) : value;
}

// Round to the nearest multiple of 10^-digits, ties away from zero.
Rational round_decimal(const Rational& value, int digits) {
  const Integer scale = power(Integer(10), static_cast<unsigned>(digits));
  Rational scaled = value * scale;
  const bool negative = sgn(scaled) < 0;
  if (negative) scaled = -scaled;
  Integer floor_part = scaled.get_num() / scaled.get_den();
  const Rational frac = scaled - Rational(floor_part);
  if (frac * 2 >= 1) floor_part += 1;
  Rational out(negative ? Integer(-floor_part) : floor_part, scale);
  out.canonicalize();
  return out;
}

}  // namespace

ParsedRational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational literal");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return {r, true};
  }

  std::string_view rest = text;
  bool negative = false;
  if (rest.front() == '-' || rest.front() == '+') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  std::string_view exponent_part;
  if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    exponent_part = rest.substr(e + 1);
    rest = rest.substr(0, e);
  }
  std::string_view int_part = rest;
  std::string_view frac_part;
  bool has_point = false;
  if (const auto dot = rest.find('.'); dot != std::string_view::npos) {
    has_point = true;
    int_part = rest.substr(0, dot);
    frac_part = rest.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number '" + std::string(text) + "'");
  if (!int_part.empty() && !all_digits(int_part)) throw ParseError("malformed number '" + std::string(text) + "'");
  if (!frac_part.empty() && !all_digits(frac_part)) throw ParseError("malformed number '" + std::string(text) + "'");

  const std::string digits = std::string(int_part) + std::string(frac_part);
  Rational value(Integer(digits.empty() ? std::string("0") : digits, 10),
                 power(Integer(10), static_cast<unsigned>(frac_part.size())));
  value.canonicalize();
  if (!exponent_part.empty()) {
    const Integer e = parse_integer(exponent_part);
    if (abs(e) > 1000) throw ParseError("exponent out of range in '" + std::string(text) + "'");
    const long ev = e.get_si();
    const Rational scale(power(Integer(10), static_cast<unsigned>(ev < 0 ? -ev : ev)));
    value = ev < 0 ? Rational(value / scale) : Rational(value * scale);
  }
  if (negative) value = -value;
  const bool is_decimal = has_point || !exponent_part.empty();
  if (!is_decimal) return {value, true};
  return {round_decimal(value, kDecimalDigitsCap), false};
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) {
  // Truncates toward zero; off by at most one ulp.
  return mpq_get_d(r.get_mpq_t());
}

std::string format_decimal(double v) {
  if (v == 0.0) return "0";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

Rational power(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

Integer power(const Integer& base, unsigned exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Integer ceil(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Rational pow2(int k) {
  const Integer big = power(Integer(2), static_cast<unsigned>(k < 0 ? -k : k));
  return k < 0 ? Rational(Integer(1), big) : Rational(big);
}

Rational from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value has no rational form");
  Rational out;
  mpq_set_d(out.get_mpq_t(), v);
  return out;
}

}  // namespace ctl
