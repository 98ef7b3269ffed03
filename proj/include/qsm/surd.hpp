#ifndef QSM_SURD_HPP
#define QSM_SURD_HPP

#include <optional>
#include <string>

#include "qsm/rational.hpp"

namespace qsm {

/// Element of the real field Q(sqrt2, sqrt3), stored on the basis
/// {1, sqrt2, sqrt3, sqrt6}:
///
///   value = q + s2*sqrt2 + s3*sqrt3 + s6*sqrt6.
///
/// The basis is a Q-vector-space basis, so the representation is unique and
/// equality is componentwise. All operations are exact.
class Surd {
public:
  Surd() = default;
  Surd(long n) : q_(n) {}  // NOLINT(google-explicit-constructor) integer literals embed
  Surd(const Rational& q) : q_(q) {}  // NOLINT(google-explicit-constructor)

  static Surd make(Rational q, Rational s2, Rational s3, Rational s6);
  static Surd sqrt2() { return make(0, 1, 0, 0); }
  static Surd sqrt3() { return make(0, 0, 1, 0); }
  static Surd sqrt6() { return make(0, 0, 0, 1); }

  const Rational& q() const { return q_; }
  const Rational& s2() const { return s2_; }
  const Rational& s3() const { return s3_; }
  const Rational& s6() const { return s6_; }

  bool is_zero() const { return q_ == 0 && s2_ == 0 && s3_ == 0 && s6_ == 0; }
  bool is_rational() const { return s2_ == 0 && s3_ == 0 && s6_ == 0; }

  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd operator-() const { return make(-q_, -s2_, -s3_, -s6_); }

  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator/(const Surd& a, const Surd& b) { return a * b.inverse(); }

  friend bool operator==(const Surd& a, const Surd& b) {
    return a.q_ == b.q_ && a.s2_ == b.s2_ && a.s3_ == b.s3_ && a.s6_ == b.s6_;
  }
  friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }

  /// Multiplicative inverse via Galois conjugation (two conjugate-multiply
  /// steps reduce to a rational norm). Throws on zero.
  Surd inverse() const;

  /// Conjugate sending sqrt2 -> -sqrt2 (and hence sqrt6 -> -sqrt6).
  Surd conj_sqrt2() const { return make(q_, -s2_, s3_, -s6_); }
  /// Conjugate sending sqrt3 -> -sqrt3 (and hence sqrt6 -> -sqrt6).
  Surd conj_sqrt3() const { return make(q_, s2_, -s3_, -s6_); }

  /// Evaluation in 256-bit precision, rounded once to double.
  double to_double() const;

  /// 0 for the exact zero, otherwise the sign of the 256-bit evaluation.
  int sign() const;

  std::string str() const;

private:
  Rational q_, s2_, s3_, s6_;
};

/// Exact square root restricted to the candidate shapes c, c*sqrt2, c*sqrt3,
/// c*sqrt6 (c rational); these are the only shapes whose squares are
/// rational, so only rational inputs can succeed. Returns the nonnegative
/// root, or absent when none of the candidate shapes squares to `a`.
/// Throws Errc::negative_input when a < 0.
std::optional<Surd> sqrt_if_exact(const Surd& a);

}  // namespace qsm

#endif
