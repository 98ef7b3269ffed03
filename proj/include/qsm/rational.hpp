#ifndef QSM_RATIONAL_HPP
#define QSM_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

#include "qsm/errors.hpp"

namespace qsm {

/// Arbitrary-precision rational. mpq_class keeps gcd(|num|, den) = 1 and
/// den > 0 once canonicalized; every constructor below canonicalizes.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) fail(Errc::division_by_zero, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses the literal grammar "p" | "p/q" (p signed decimal, q positive
/// decimal). Anything else, including "1//2" or "1/0", is a parse error.
Rational parse_rational(const std::string& text);

/// Canonical form: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& r);

/// Exact square root when `r` is the square of a rational, else absent.
std::optional<Rational> rational_sqrt(const Rational& r);

inline double rational_to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rational rational_from_double(double v) {
  Rational r(v);
  r.canonicalize();
  return r;
}

}  // namespace qsm

#endif
