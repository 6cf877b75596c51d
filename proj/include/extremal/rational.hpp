#ifndef EXTREMAL_RATIONAL_HPP
#define EXTREMAL_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace extremal {

// Exact arithmetic for endpoints, thresholds and probabilities. Beware of
// `auto` with mpq_class: its expression templates capture references.
using Rational = mpq_class;

/// Parses "1/3", "-2", "0.125", "1e-3" or "2.5E+2" into an exact rational.
/// Decimal input is read digit-by-digit, so "0.1" is exactly 1/10.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

/// Exact conversion of a finite double.
Rational from_double(double value);

Rational floor(const Rational& value);

inline Rational abs(const Rational& value) {
  Rational r = value;
  if (r < 0) r = -r;
  return r;
}

/// Converts an exact value into the scalar type used by a computation.
template <class S> S scalar_cast(const Rational& value);
template <> inline Rational scalar_cast<Rational>(const Rational& value) { return value; }
template <> inline double scalar_cast<double>(const Rational& value) { return value.get_d(); }

} // namespace extremal

#endif
