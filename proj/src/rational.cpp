#include "minkval/rational.hpp"

#include <cmath>

#include "minkval/errors.hpp"

namespace minkval {
namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && s[0] == '-') i = 1;
  if (i == s.size()) return false;
  // no leading zeros except the literal "0"
  if (s[i] == '0' && s.size() - i > 1) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num, true) || num == "-0") {
    throw FormatError("malformed rational numerator: '" + std::string(text) + "'");
  }
  Rational r;
  r.get_num() = Integer(std::string(num), 10);
  if (slash == std::string_view::npos) {
    r.get_den() = 1;
    return r;
  }
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den, false)) {
    throw FormatError("malformed rational denominator: '" + std::string(text) + "'");
  }
  Integer d(std::string(den), 10);
  if (d == 0) throw FormatError("zero denominator: '" + std::string(text) + "'");
  if (gcd(r.get_num(), d) != 1) {
    throw FormatError("unreduced rational: '" + std::string(text) + "'");
  }
  r.get_den() = d;
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_decimal(const Rational& r, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const bool negative = sgn(r) < 0;
  Rational a = abs(r) * scale;
  // round half up on the magnitude
  Integer q = (a.get_num() * 2 + a.get_den()) / (a.get_den() * 2);
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && q != 0) s.insert(0, "-");
  return s;
}

Rational round_to_dyadic(double x, int bits) {
  if (!std::isfinite(x)) throw InvalidArgument("non-finite value cannot be rounded");
  const double scaled = std::ldexp(x, bits);
  Rational r(std::round(scaled));
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  r /= den;
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

}  // namespace minkval
