#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hyplyap {

using Rational = mpq_class;
using Integer = mpz_class;

/// num / den in lowest terms. mpq_class(num, den) does not reduce on its own.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q", an integer, or a finite decimal such as "0.25" or "-1.5"
/// into an exact rational. Throws Error(InvalidParams) on anything else.
Rational parse_rational(std::string_view text);

/// Comma separated list of rationals, e.g. "1/5,2/5" or "0.5,0.5".
std::vector<Rational> parse_rational_list(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

Integer floor_of(const Rational& q);

/// Natural log of |q| that stays finite for rationals far outside the
/// double range. q must be nonzero.
double log_abs(const Rational& q);

Integer lcm_of_denominators(const std::vector<Rational>& values);

}  // namespace hyplyap
