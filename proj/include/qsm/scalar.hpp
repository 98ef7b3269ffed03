#ifndef QSM_SCALAR_HPP
#define QSM_SCALAR_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "qsm/surd.hpp"

namespace qsm {

/// Backend tolerance used when none is configured explicitly. Degree-6
/// evaluation on unit-norm inputs loses at most ~6 digits, so 1e-9 leaves
/// headroom above double rounding.
inline constexpr double kDefaultTol = 1e-9;

/// The scalar contract the algebra layer is generic over. Two backends:
/// Surd (exact, tolerances ignored) and double (approximate, decisions taken
/// relative to a tolerance). `is_exact_zero` is the storage-pruning predicate
/// and must not depend on the tolerance.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Surd> {
  static constexpr bool exact = true;
  static Surd zero() { return {}; }
  static Surd one() { return Surd(1); }
  static Surd from_rational(const Rational& r) { return Surd(r); }
  static bool is_exact_zero(const Surd& v) { return v.is_zero(); }
  static bool is_zero(const Surd& v, double) { return v.is_zero(); }
  static bool eq(const Surd& a, const Surd& b, double) { return a == b; }
  static double to_double(const Surd& v) { return v.to_double(); }
  static int sign(const Surd& v) { return v.sign(); }
  static std::optional<Surd> sqrt(const Surd& v) { return sqrt_if_exact(v); }
  static std::string str(const Surd& v) { return v.str(); }
  static constexpr const char* backend_name() { return "exact"; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_rational(const Rational& r) { return r.get_d(); }
  static bool is_exact_zero(double v) { return v == 0.0; }
  static bool is_zero(double v, double tol) { return std::fabs(v) <= tol; }
  // |a-b| <= tol * max(1, |a|, |b|)
  static bool eq(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
  }
  static double to_double(double v) { return v; }
  static int sign(double v) { return (v > 0.0) - (v < 0.0); }
  static std::optional<double> sqrt(double v) {
    if (v < 0.0) fail(Errc::negative_input, "square root of negative value");
    return std::sqrt(v);
  }
  static std::string str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  static constexpr const char* backend_name() { return "float"; }
};

}  // namespace qsm

#endif
