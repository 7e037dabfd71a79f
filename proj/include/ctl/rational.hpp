#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace ctl {

using Integer = mpz_class;
using Rational = mpq_class;

/// Result of parsing a probability-like literal.
struct ParsedRational {
  Rational value;
  /// False when the literal was a decimal (converted with at most
  /// kDecimalDigitsCap fractional digits) rather than an `a/b` or integer.
  bool exact_literal = true;
};

/// Decimal literals keep at most this many fractional digits, so the
/// converted denominator divides 10^12.
inline constexpr int kDecimalDigitsCap = 12;

/// Accepts `a/b`, `a`, or a plain decimal such as `0.25` / `-1.5e-3`.
ParsedRational parse_rational(std::string_view text);

/// `a/b`, or `a` when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Twelve significant digits, printf `%.12g` style.
std::string format_decimal(double v);

Rational power(const Rational& base, unsigned exponent);
Integer power(const Integer& base, unsigned exponent);

Integer ceil(const Rational& r);

/// Exact 2^k for signed k.
Rational pow2(int k);

/// Exact rational value of a finite double.
Rational from_double(double v);

}  // namespace ctl
