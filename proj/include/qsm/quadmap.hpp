#ifndef QSM_QUADMAP_HPP
#define QSM_QUADMAP_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsm/errors.hpp"
#include "qsm/matrix.hpp"
#include "qsm/parallel.hpp"
#include "qsm/poly.hpp"
#include "qsm/rational.hpp"
#include "qsm/scalar.hpp"

namespace qsm {

enum class Verdict { Harmonic, ProperBiharmonic, Neither };
enum class Path { criterion, direct, both };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Harmonic: return "Harmonic";
    case Verdict::ProperBiharmonic: return "ProperBiharmonic";
    default: return "Neither";
  }
}

/// Outcome of the polynomial sphericity certificate. `residual` is the
/// degree-4 polynomial |F(x)|^2 - |x|^4; the map is spherical exactly when
/// it vanishes. `witness` is the leading nonzero monomial otherwise.
template <class T>
struct SphericityCheck {
  bool ok = false;
  HomoPoly<T> residual;
  std::optional<Monomial> witness;
};

template <class T>
SphericityCheck<T> check_spherical_polynomial(const std::vector<Matrix<T>>& a, double tol = kDefaultTol, Exec exec = Exec::parallel) {
  if (a.empty()) fail(Errc::dimension_mismatch, "map needs at least one component");
  const int d = a.front().rows();
  SphericityCheck<T> out;
  HomoPoly<T> residual(d, 4);
  for (const auto& ai : a) {
    HomoPoly<T> q = quad_form(ai, tol);
    residual += mul(q, q, exec);
  }
  HomoPoly<T> r2 = radius_sq_poly<T>(d);
  residual -= mul(r2, r2, exec);
  out.ok = residual.is_zero(tol);
  if (!out.ok) {
    for (const auto& [mono, c] : residual.terms()) {
      if (!ScalarTraits<T>::is_zero(c, tol)) {
        out.witness = mono;
        break;
      }
    }
  }
  out.residual = std::move(residual);
  return out;
}

/// Coefficient-vector data of a quadratic map: F(x) = sum_i a_i (x^i)^2 +
/// sum_{i<j} a_ij x^i x^j with a_i, a_ij in R^{n+1}; a_ij is stored
/// symmetrically (a_ij = a_ji, a_ii unused).
template <class T>
struct CoefficientVectors {
  int m = 0;
  int n = 0;
  std::vector<std::vector<T>> diag;                // diag[i] = a_i, length n+1
  std::vector<std::vector<std::vector<T>>> off;    // off[i][j] = a_ij

  static CoefficientVectors from_matrices(const std::vector<Matrix<T>>& a) {
    CoefficientVectors d;
    d.n = static_cast<int>(a.size()) - 1;
    d.m = a.front().rows() - 1;
    const int mp1 = d.m + 1;
    const int np1 = d.n + 1;
    d.diag.assign(mp1, std::vector<T>(np1, ScalarTraits<T>::zero()));
    d.off.assign(mp1, std::vector<std::vector<T>>(mp1, std::vector<T>(np1, ScalarTraits<T>::zero())));
    for (int k = 0; k < np1; ++k)
      for (int i = 0; i < mp1; ++i) {
        d.diag[i][k] = a[k](i, i);
        for (int j = 0; j < mp1; ++j)
          if (i != j) d.off[i][j][k] = a[k](i, j) + a[k](j, i);
      }
    return d;
  }
};

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s = ScalarTraits<T>::zero();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// One failed sphericity relation on the coefficient vectors. `relation`
/// numbers the five conditions:
///   1: |a_i| = 1
///   2: <a_i, a_ij> = 0                        (i != j)
///   3: |a_ij|^2 + 2<a_i, a_j> = 2             (i != j)
///   4: <a_i, a_jk> + <a_ij, a_ik> = 0         (i, j, k distinct)
///   5: <a_ij, a_kl> + <a_ik, a_jl> + <a_il, a_jk> = 0  (all distinct)
template <class T>
struct RelationViolation {
  int relation;
  int i, j, k, l;
  T value;
};

template <class T>
std::vector<RelationViolation<T>> coefficient_relation_violations(const CoefficientVectors<T>& d, double tol = kDefaultTol) {
  std::vector<RelationViolation<T>> out;
  const int mp1 = d.m + 1;
  const T one = ScalarTraits<T>::one();
  const T two = one + one;
  for (int i = 0; i < mp1; ++i) {
    T v = dot(d.diag[i], d.diag[i]) - one;
    if (!ScalarTraits<T>::is_zero(v, tol)) out.push_back({1, i, -1, -1, -1, v});
  }
  for (int i = 0; i < mp1; ++i)
    for (int j = 0; j < mp1; ++j) {
      if (i == j) continue;
      T v = dot(d.diag[i], d.off[i][j]);
      if (!ScalarTraits<T>::is_zero(v, tol)) out.push_back({2, i, j, -1, -1, v});
    }
  for (int i = 0; i < mp1; ++i)
    for (int j = i + 1; j < mp1; ++j) {
      T v = dot(d.off[i][j], d.off[i][j]) + two * dot(d.diag[i], d.diag[j]) - two;
      if (!ScalarTraits<T>::is_zero(v, tol)) out.push_back({3, i, j, -1, -1, v});
    }
  for (int i = 0; i < mp1; ++i)
    for (int j = 0; j < mp1; ++j)
      for (int k = j + 1; k < mp1; ++k) {
        if (i == j || i == k) continue;
        T v = dot(d.diag[i], d.off[j][k]) + dot(d.off[i][j], d.off[i][k]);
        if (!ScalarTraits<T>::is_zero(v, tol)) out.push_back({4, i, j, k, -1, v});
      }
  for (int i = 0; i < mp1; ++i)
    for (int j = i + 1; j < mp1; ++j)
      for (int k = j + 1; k < mp1; ++k)
        for (int l = k + 1; l < mp1; ++l) {
          T v = dot(d.off[i][j], d.off[k][l]) + dot(d.off[i][k], d.off[j][l]) + dot(d.off[i][l], d.off[j][k]);
          if (!ScalarTraits<T>::is_zero(v, tol)) out.push_back({5, i, j, k, l, v});
        }
  return out;
}

template <class T>
struct Classification {
  Verdict verdict = Verdict::Neither;
  bool certified = false;
  std::optional<T> energy_constant;
  std::optional<T> s_scalar;
  std::vector<T> laplacian;
  std::string evidence;
  /// When S = alpha*I, the pair (c1, c2) with bitension = c1 * laplacian +
  /// c2 * F on the unit sphere.
  std::optional<std::pair<T, T>> closed_form_coefficients;
};

/// A quadratic map between unit spheres: component polynomials X^t A_i X
/// with symmetric A_i, certified spherical (|F(x)|^2 = |x|^4) and
/// non-constant at construction. Immutable afterwards; S and the Laplacian
/// vector are computed once.
template <class T>
class QuadMap {
public:
  /// Accepts raw square matrices, replaces each by its symmetric part, then
  /// validates.
  static QuadMap symmetrized(std::vector<Matrix<T>> raw, double tol = kDefaultTol, Exec exec = Exec::parallel) {
    for (auto& a : raw) {
      if (!a.is_square()) fail(Errc::dimension_mismatch, "component matrix not square");
      Matrix<T> sym(a.rows(), a.cols());
      const T half = ScalarTraits<T>::from_rational(rat(1, 2));
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) sym(i, j) = (a(i, j) + a(j, i)) * half;
      a = std::move(sym);
    }
    return validated(std::move(raw), tol, exec);
  }

  /// Requires symmetric matrices; certifies sphericity and non-constancy.
  static QuadMap validated(std::vector<Matrix<T>> matrices, double tol = kDefaultTol, Exec exec = Exec::parallel) {
    if (matrices.empty()) fail(Errc::dimension_mismatch, "map needs at least one component");
    const int d = matrices.front().rows();
    if (d < 1) fail(Errc::dimension_mismatch, "empty domain");
    for (const auto& a : matrices) {
      if (!a.is_square() || a.rows() != d) fail(Errc::dimension_mismatch, "component matrices must share one square shape");
      if (!a.is_symmetric(tol)) fail(Errc::not_symmetric, "component matrix not symmetric");
    }
    auto cert = check_spherical_polynomial(matrices, tol, exec);
    if (!cert.ok) fail(Errc::not_spherical, "|F(x)|^2 - |x|^4 has nonzero monomial " + cert.witness->str() + " with coefficient " + ScalarTraits<T>::str(cert.residual.coeff(*cert.witness)));
    bool nonconstant = false;
    for (const auto& a : matrices)
      if (!a.scalar_multiple_of_identity(tol)) {
        nonconstant = true;
        break;
      }
    if (!nonconstant) fail(Errc::constant_map, "every component matrix is a scalar multiple of the identity");
    return QuadMap(std::move(matrices), tol);
  }

  int m() const { return m_; }
  int n() const { return n_; }
  double tol() const { return tol_; }
  const std::vector<Matrix<T>>& matrices() const { return a_; }
  const Matrix<T>& s_matrix() const { return s_; }
  const std::vector<T>& laplacian() const { return lap_; }

  bool laplacian_is_zero() const {
    for (const auto& v : lap_)
      if (!ScalarTraits<T>::is_zero(v, tol_)) return false;
    return true;
  }

  T laplacian_norm_sq() const { return dot(lap_, lap_); }

  std::optional<T> s_scalar() const { return s_.scalar_multiple_of_identity(tol_); }

  PolyVec<T> components() const {
    PolyVec<T> f;
    f.reserve(a_.size());
    for (const auto& a : a_) f.push_back(quad_form(a, tol_));
    return f;
  }

  std::vector<T> eval(const std::vector<T>& x) const {
    if (static_cast<int>(x.size()) != m_ + 1) fail(Errc::dimension_mismatch, "evaluation point has wrong dimension");
    std::vector<T> out;
    out.reserve(a_.size());
    for (const auto& a : a_) {
      T v = ScalarTraits<T>::zero();
      for (int i = 0; i < m_ + 1; ++i) {
        T row = ScalarTraits<T>::zero();
        for (int j = 0; j < m_ + 1; ++j) row += a(i, j) * x[static_cast<std::size_t>(j)];
        v += x[static_cast<std::size_t>(i)] * row;
      }
      out.push_back(v);
    }
    return out;
  }

  /// 2 X^t S X - 2|x|^2; restricted to the unit sphere this is the energy
  /// density.
  HomoPoly<T> energy_density_poly() const {
    const T two = ScalarTraits<T>::one() + ScalarTraits<T>::one();
    return quad_form(s_, tol_).scaled(two) - radius_sq_poly<T>(m_ + 1).scaled(two);
  }

  /// The constant energy density 2(alpha - 1), present iff S = alpha*I.
  std::optional<T> energy_constant() const {
    auto alpha = s_scalar();
    if (!alpha) return std::nullopt;
    const T two = ScalarTraits<T>::one() + ScalarTraits<T>::one();
    return two * (*alpha - ScalarTraits<T>::one());
  }

  /// Degree-4 homogeneous representative of the tension field:
  ///   -|x|^4 * laplacian + (4 X^t S X - 2(m+3)|x|^2) * F(x),
  /// equal to the tension field on the unit sphere.
  PolyVec<T> homogenized_tension(Exec exec = Exec::parallel) const {
    const int d = m_ + 1;
    HomoPoly<T> r2 = radius_sq_poly<T>(d);
    HomoPoly<T> r4 = mul(r2, r2, exec);
    const T four = ScalarTraits<T>::from_rational(rat(4));
    const T w = ScalarTraits<T>::from_rational(rat(2L * (m_ + 3)));
    HomoPoly<T> weight = quad_form(s_, tol_).scaled(four) - r2.scaled(w);
    PolyVec<T> f = components();
    PolyVec<T> out(a_.size(), HomoPoly<T>(d, 4));
    parallel_for(static_cast<long>(a_.size()), exec, [&](long i) {
      out[static_cast<std::size_t>(i)] = r4.scaled(-lap_[static_cast<std::size_t>(i)]) + mul(weight, f[static_cast<std::size_t>(i)], exec);
    });
    return out;
  }

  /// Degree-6 homogeneous representative of the bitension field:
  ///   -4|x|^4 ((m+5)|x|^2 - 4 X^t S X) (tr A_i)_i
  ///   + 4 ((m+3)(m+5)|x|^4 - 6(m+5)|x|^2 X^t S X + 8 (X^t S X)^2) F(x)
  ///   + 32 |x|^4 (X^t A_i S X)_i.
  /// Vanishing of this vector is the biharmonicity test.
  PolyVec<T> homogenized_bitension(Exec exec = Exec::parallel) const {
    const int d = m_ + 1;
    const long mm = m_;
    HomoPoly<T> r2 = radius_sq_poly<T>(d);
    HomoPoly<T> sp = quad_form(s_, tol_);
    HomoPoly<T> r4 = mul(r2, r2, exec);
    HomoPoly<T> r6 = mul(r4, r2, exec);
    HomoPoly<T> r4s = mul(r4, sp, exec);
    HomoPoly<T> r2s = mul(r2, sp, exec);
    HomoPoly<T> ss = mul(sp, sp, exec);

    auto c = [](long v) { return ScalarTraits<T>::from_rational(rat(v)); };
    // -4 * ((m+5) r6 - 4 r4s), applied per component to tr A_i below.
    HomoPoly<T> trace_weight = r6.scaled(c(mm + 5)) - r4s.scaled(c(4));
    // (m+3)(m+5) r4 - 6(m+5) r2s + 8 ss, applied to 4 F below.
    HomoPoly<T> f_weight = r4.scaled(c((mm + 3) * (mm + 5))) - r2s.scaled(c(6 * (mm + 5))) + ss.scaled(c(8));

    PolyVec<T> f = components();
    PolyVec<T> out(a_.size(), HomoPoly<T>(d, 6));
    const T half = ScalarTraits<T>::from_rational(rat(1, 2));
    parallel_for(static_cast<long>(a_.size()), exec, [&](long li) {
      const auto i = static_cast<std::size_t>(li);
      T tr = a_[i].trace();
      Matrix<T> as = (a_[i] * s_ + s_ * a_[i]).scaled(half);
      HomoPoly<T> qi = quad_form(as, tol_);
      out[i] = trace_weight.scaled(-(c(4) * tr)) + mul(f_weight, f[i], exec).scaled(c(4)) + mul(r4, qi, exec).scaled(c(32));
    });
    return out;
  }

  /// When S = alpha*I the bitension on the unit sphere collapses to
  /// c1 * laplacian + c2 * F with
  ///   c1 = -8 (alpha - (m+5)/4),  c2 = 32 (alpha - (m+5)/4)(alpha - (m+3)/2).
  std::optional<std::pair<T, T>> scalar_s_bitension_coefficients() const {
    auto alpha = s_scalar();
    if (!alpha) return std::nullopt;
    const T d1 = *alpha - ScalarTraits<T>::from_rational(rat(m_ + 5, 4));
    const T d2 = *alpha - ScalarTraits<T>::from_rational(rat(m_ + 3, 2));
    const T c1 = ScalarTraits<T>::from_rational(rat(-8)) * d1;
    const T c2 = ScalarTraits<T>::from_rational(rat(32)) * d1 * d2;
    return std::make_pair(c1, c2);
  }

  Classification<T> classify(Path path, Exec exec = Exec::parallel) const {
    Classification<T> r;
    r.certified = ScalarTraits<T>::exact;
    r.laplacian = lap_;
    r.s_scalar = s_scalar();
    r.energy_constant = energy_constant();
    r.closed_form_coefficients = scalar_s_bitension_coefficients();

    auto criterion = [&]() {
      if (laplacian_is_zero()) {
        r.evidence = "laplacian vector vanishes";
        return Verdict::Harmonic;
      }
      const T target = ScalarTraits<T>::from_rational(rat(m_ + 5, 4));
      if (r.s_scalar && ScalarTraits<T>::eq(*r.s_scalar, target, tol_)) {
        r.evidence = "S equals ((m+5)/4) I and the laplacian vector is nonzero";
        return Verdict::ProperBiharmonic;
      }
      r.evidence = "laplacian vector nonzero and S differs from ((m+5)/4) I";
      return Verdict::Neither;
    };
    auto direct = [&]() {
      if (polyvec_is_zero(homogenized_tension(exec), tol_)) {
        r.evidence = "homogenized tension vanishes identically";
        return Verdict::Harmonic;
      }
      if (polyvec_is_zero(homogenized_bitension(exec), tol_)) {
        r.evidence = "homogenized bitension vanishes identically, tension does not";
        return Verdict::ProperBiharmonic;
      }
      r.evidence = "neither homogenized tension nor bitension vanishes";
      return Verdict::Neither;
    };

    switch (path) {
      case Path::criterion:
        r.verdict = criterion();
        break;
      case Path::direct:
        r.verdict = direct();
        break;
      case Path::both: {
        Verdict a = criterion();
        std::string ea = r.evidence;
        Verdict b = direct();
        if (a != b)
          fail(Errc::path_disagreement, std::string("criterion path says ") + verdict_name(a) + " but direct path says " + verdict_name(b));
        r.verdict = a;
        r.evidence = ea + "; " + r.evidence;
        break;
      }
    }
    return r;
  }

  /// New map with matrices A'_k = sum_l M_{kl} U^t A_l U, M = V (or V*B).
  /// U, V must be orthogonal; B, when given, symmetric positive definite.
  /// Sphericity is re-certified, so an invalid B is rejected.
  QuadMap transformed(const Matrix<T>& u, const Matrix<T>& v, const std::optional<Matrix<T>>& b = std::nullopt, Exec exec = Exec::parallel) const {
    if (u.rows() != m_ + 1) fail(Errc::dimension_mismatch, "domain transform has wrong size");
    if (v.rows() != n_ + 1) fail(Errc::dimension_mismatch, "codomain transform has wrong size");
    if (!is_orthogonal(u, tol_)) fail(Errc::not_orthogonal, "domain transform not orthogonal");
    if (!is_orthogonal(v, tol_)) fail(Errc::not_orthogonal, "codomain transform not orthogonal");
    Matrix<T> mix = v;
    if (b) {
      if (b->rows() != n_ + 1 || !b->is_symmetric(tol_)) fail(Errc::not_symmetric, "codomain deformation must be symmetric of matching size");
      auto ev = symmetric_eigenvalues(to_double_matrix(*b));
      if (ev.front() <= 1e-12) fail(Errc::not_positive_definite, "codomain deformation must be positive definite");
      mix = v * (*b);
    }
    std::vector<Matrix<T>> rotated;
    rotated.reserve(a_.size());
    Matrix<T> ut = u.transposed();
    for (const auto& a : a_) rotated.push_back(ut * a * u);
    std::vector<Matrix<T>> out;
    out.reserve(a_.size());
    for (int k = 0; k < n_ + 1; ++k) {
      Matrix<T> acc(m_ + 1, m_ + 1);
      for (int l = 0; l < n_ + 1; ++l) {
        const T& c = mix(k, l);
        if (ScalarTraits<T>::is_exact_zero(c)) continue;
        acc = acc + rotated[static_cast<std::size_t>(l)].scaled(c);
      }
      out.push_back(std::move(acc));
    }
    return validated(std::move(out), tol_, exec);
  }

private:
  QuadMap(std::vector<Matrix<T>> matrices, double tol)
      : m_(matrices.front().rows() - 1), n_(static_cast<int>(matrices.size()) - 1), a_(std::move(matrices)), s_(m_ + 1, m_ + 1), tol_(tol) {
    for (const auto& a : a_) {
      s_ = s_ + a * a;
      lap_.push_back(ScalarTraits<T>::from_rational(rat(-2)) * a.trace());
    }
  }

  int m_, n_;
  std::vector<Matrix<T>> a_;
  Matrix<T> s_;
  std::vector<T> lap_;
  double tol_;
};

template <class T>
QuadMap<double> map_to_double(const QuadMap<T>& map, double tol = kDefaultTol) {
  std::vector<Matrix<double>> md;
  md.reserve(map.matrices().size());
  for (const auto& a : map.matrices()) md.push_back(to_double_matrix(a));
  return QuadMap<double>::validated(std::move(md), tol);
}

}  // namespace qsm

#endif
