#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tubehyp {

/// Exact scalar used by every predicate on the polygonal/slit class.
using Rational = mpq_class;

/// Parses "12", "-0.125", "3/4", "-7/2". Decimals convert without rounding.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" in lowest terms otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Exact conversion of a finite binary64 value.
Rational from_double(double value);

/// n / d in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational ratio(long n, long d)
{
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Rational abs_of(const Rational& value) { return value < 0 ? Rational(-value) : value; }

inline int sign_of(const Rational& value) { return sgn(value); }

/// Smallest integer >= value.
Rational ceil_of(const Rational& value);

}  // namespace tubehyp
