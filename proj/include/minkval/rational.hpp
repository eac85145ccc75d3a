#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace minkval {

/// Exact scalar. GMP keeps every mpq_class canonical (positive denominator,
/// coprime numerator/denominator) after each arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Strict parser for the canonical rational string forms "p/q" and "p".
/// Rejects zero or negative denominators, unreduced fractions, leading '+',
/// whitespace, and anything that is not a plain decimal integer.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form (denominator always written, "6/1" for integers).
std::string to_string(const Rational& r);

/// Decimal rendering with a fixed number of fractional digits.
std::string to_decimal(const Rational& r, int digits = 12);

inline double to_double(const Rational& r) { return r.get_d(); }

/// Nearest multiple of 2^-bits to x (ties away from zero); exact in binary.
Rational round_to_dyadic(double x, int bits = 40);

Integer binomial(unsigned n, unsigned k);
Integer factorial(unsigned n);

/// Integer power of a rational.
Rational pow(const Rational& base, unsigned exponent);

}  // namespace minkval
