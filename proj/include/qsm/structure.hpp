#ifndef QSM_STRUCTURE_HPP
#define QSM_STRUCTURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "qsm/quadmap.hpp"

namespace qsm {

/// 8 tr(S) + |laplacian|^2 - 4(m+1)(m+3); identically zero for every
/// spherical quadratic map.
template <class T>
T trace_identity_residual(const QuadMap<T>& map) {
  const long m = map.m();
  T res = ScalarTraits<T>::from_rational(rat(8)) * map.s_matrix().trace();
  res += map.laplacian_norm_sq();
  res -= ScalarTraits<T>::from_rational(rat(4 * (m + 1) * (m + 3)));
  return res;
}

template <class T>
struct LaplacianNormCheck {
  T norm_sq;
  T expected;
  bool ok;
};

/// Certifies |laplacian|^2 = 2(m+1)^2, which holds for every properly
/// biharmonic quadratic map. Rejects maps of any other class.
template <class T>
LaplacianNormCheck<T> laplacian_norm_check(const QuadMap<T>& map, Exec exec = Exec::parallel) {
  auto cls = map.classify(Path::criterion, exec);
  if (cls.verdict != Verdict::ProperBiharmonic)
    fail(Errc::not_proper_biharmonic, std::string("map classifies as ") + verdict_name(cls.verdict));
  LaplacianNormCheck<T> out{map.laplacian_norm_sq(), ScalarTraits<T>::from_rational(rat(2 * (static_cast<long>(map.m()) + 1) * (static_cast<long>(map.m()) + 1))), false};
  out.ok = ScalarTraits<T>::eq(out.norm_sq, out.expected, map.tol());
  return out;
}

/// The small hypersphere of the codomain sphere forced by a nonzero
/// laplacian: the image satisfies <laplacian, y> = alpha, so it lies in the
/// sphere of squared radius 1 - alpha^2/|laplacian|^2 centered at
/// (alpha/|laplacian|^2) * laplacian.
template <class T>
struct HypersphereLocation {
  std::vector<T> center;
  T radius_sq;
  /// Parallel to the laplacian vector; of unit length exactly when the
  /// length is representable in the scalar field (`unit_exact`).
  std::vector<T> unit_normal_direction;
  bool unit_exact;
  T affine_offset;
};

/// Present when the laplacian is nonzero and the energy density is constant
/// (S scalar, which makes the affine offset a constant on the sphere).
template <class T>
std::optional<HypersphereLocation<T>> locate_hypersphere(const QuadMap<T>& map) {
  if (map.laplacian_is_zero()) return std::nullopt;
  auto alpha_s = map.s_scalar();
  if (!alpha_s) return std::nullopt;
  HypersphereLocation<T> loc;
  const long m = map.m();
  loc.affine_offset = ScalarTraits<T>::from_rational(rat(4)) * (*alpha_s) - ScalarTraits<T>::from_rational(rat(2 * (m + 3)));
  const T nsq = map.laplacian_norm_sq();
  loc.radius_sq = ScalarTraits<T>::one() - loc.affine_offset * loc.affine_offset / nsq;
  if (ScalarTraits<T>::sign(loc.radius_sq) <= 0)
    fail(Errc::condition_violated, "forced hypersphere degenerates to a point; the map would be constant");
  const T scale = loc.affine_offset / nsq;
  for (const auto& v : map.laplacian()) loc.center.push_back(scale * v);
  auto len = ScalarTraits<T>::sqrt(nsq);
  loc.unit_exact = len.has_value();
  if (len) {
    for (const auto& v : map.laplacian()) loc.unit_normal_direction.push_back(v / *len);
  } else {
    loc.unit_normal_direction = map.laplacian();
  }
  return loc;
}

template <class T>
struct FactorizationResult {
  /// Orthogonal codomain change sending the laplacian to the last axis; the
  /// transformed map is rotation * F.
  Matrix<T> rotation;
  /// First n rotated matrices: a quadratic map into the sphere of squared
  /// radius 1/2 inside the hyperplane cut by the last coordinate.
  std::vector<Matrix<T>> psi_matrices;
  T radius_sq;
  T last_component_constant;
  bool psi_harmonic;
  /// Energy density of the extracted map, (m+1)/2, certified via
  /// S_psi = ((m+3)/4) I.
  T psi_energy_density;
};

/// Splits a properly biharmonic map, after an exact codomain rotation, into
/// a harmonic map into a radius-1/sqrt(2) sphere plus the constant last
/// component 1/sqrt(2).
template <class T>
FactorizationResult<T> factorize(const QuadMap<T>& map, Exec exec = Exec::parallel) {
  auto cls = map.classify(Path::criterion, exec);
  if (cls.verdict != Verdict::ProperBiharmonic)
    fail(Errc::not_proper_biharmonic, std::string("map classifies as ") + verdict_name(cls.verdict));

  const int n = map.n();
  const int mp1 = map.m() + 1;
  const double tol = map.tol();
  const std::vector<T>& lap = map.laplacian();
  const T nsq = map.laplacian_norm_sq();
  auto len = ScalarTraits<T>::sqrt(nsq);
  if (!len) fail(Errc::exact_rotation_unavailable, "laplacian length " + ScalarTraits<T>::str(nsq) + " has no square root in the scalar field");

  // Householder reflection sending the laplacian to (0, ..., 0, -|lap|),
  // which leaves the rotated last matrix with the positive trace that makes
  // the last component of the map the positive constant sqrt(1 - r^2).
  std::vector<T> v = lap;
  v[static_cast<std::size_t>(n)] += *len;
  T vv = dot(v, v);
  Matrix<T> h = Matrix<T>::identity(n + 1);
  if (!ScalarTraits<T>::is_zero(vv, tol)) {
    const T scale = (ScalarTraits<T>::one() + ScalarTraits<T>::one()) / vv;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) h(i, j) -= scale * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  }

  FactorizationResult<T> out{h, {}, ScalarTraits<T>::zero(), ScalarTraits<T>::zero(), false, ScalarTraits<T>::zero()};

  std::vector<Matrix<T>> rotated;
  rotated.reserve(map.matrices().size());
  for (int k = 0; k <= n; ++k) {
    Matrix<T> acc(mp1, mp1);
    for (int l = 0; l <= n; ++l) {
      const T& c = h(k, l);
      if (ScalarTraits<T>::is_exact_zero(c)) continue;
      acc = acc + map.matrices()[static_cast<std::size_t>(l)].scaled(c);
    }
    rotated.push_back(std::move(acc));
  }

  const T alpha = ScalarTraits<T>::from_rational(rat(-(static_cast<long>(map.m()) + 1)));
  out.radius_sq = ScalarTraits<T>::one() - alpha * alpha / nsq;
  auto c = ScalarTraits<T>::sqrt(ScalarTraits<T>::one() - out.radius_sq);
  if (!c) fail(Errc::exact_rotation_unavailable, "constant last component has no square root in the scalar field");
  out.last_component_constant = *c;

  auto last_scalar = rotated.back().scalar_multiple_of_identity(tol);
  if (!last_scalar || !ScalarTraits<T>::eq(*last_scalar, *c, tol)) {
    if (ScalarTraits<T>::exact)
      fail(Errc::condition_violated, "rotated last matrix is not the expected constant multiple of the identity");
    fail(Errc::exact_rotation_unavailable, "rotated last matrix drifts from the expected constant multiple of the identity");
  }

  out.psi_matrices.assign(rotated.begin(), rotated.end() - 1);
  out.psi_harmonic = true;
  for (const auto& a : out.psi_matrices)
    if (!ScalarTraits<T>::is_zero(a.trace(), tol)) out.psi_harmonic = false;

  // S_psi = S - (1/2) I must equal ((m+3)/4) I, which pins the energy
  // density of the extracted map at (m+1)/2 = radius_sq * (m+1).
  Matrix<T> s_psi(mp1, mp1);
  for (const auto& a : out.psi_matrices) s_psi = s_psi + a * a;
  auto beta = s_psi.scalar_multiple_of_identity(tol);
  const T beta_expected = ScalarTraits<T>::from_rational(rat(static_cast<long>(map.m()) + 3, 4));
  if (!beta || !ScalarTraits<T>::eq(*beta, beta_expected, tol))
    fail(Errc::condition_violated, "extracted map does not have the expected scalar S");
  out.psi_energy_density = ScalarTraits<T>::from_rational(rat(static_cast<long>(map.m()) + 1, 2));
  return out;
}

template <class T>
struct HypersphereAnalysis {
  /// 1: squared radius exactly 1/2; 2: squared radius above 1/2, image in a
  /// totally geodesic subsphere of squared radius 1/2.
  int case_id;
  T claimed_radius_sq;
  bool psi_harmonic;
  /// Case 2: center of the inner sphere, t0 * laplacian with
  /// t0 = -1/(2(m+1)).
  std::vector<T> center;
  T inner_radius_sq;
  bool full;
  std::string notes;
};

/// For a properly biharmonic map whose last matrix is sqrt(1-r^2) * I
/// (image inside the sphere of squared radius r^2 = claimed_radius_sq cut
/// by a constant last coordinate): certifies r^2 >= 1/2; at equality the
/// first n components are harmonic, above it the image lies in a smaller
/// sphere of squared radius 1/2 whose center is located exactly.
template <class T>
HypersphereAnalysis<T> hypersphere_analysis(const QuadMap<T>& map, const T& claimed_radius_sq, Exec exec = Exec::parallel) {
  auto cls = map.classify(Path::criterion, exec);
  if (cls.verdict != Verdict::ProperBiharmonic)
    fail(Errc::not_proper_biharmonic, std::string("map classifies as ") + verdict_name(cls.verdict));

  const double tol = map.tol();
  const int n = map.n();
  const long m = map.m();
  const T one = ScalarTraits<T>::one();
  const T half = ScalarTraits<T>::from_rational(rat(1, 2));

  auto c = map.matrices().back().scalar_multiple_of_identity(tol);
  if (!c) fail(Errc::not_in_claimed_sphere, "last matrix is not a scalar multiple of the identity");
  if (ScalarTraits<T>::sign(*c) < 0) fail(Errc::not_in_claimed_sphere, "last component is a negative constant; align the map first");
  if (!ScalarTraits<T>::eq((*c) * (*c), one - claimed_radius_sq, tol))
    fail(Errc::not_in_claimed_sphere, "last component constant does not match the claimed radius");

  if (ScalarTraits<T>::sign(claimed_radius_sq - half) < 0 && !ScalarTraits<T>::eq(claimed_radius_sq, half, tol))
    fail(Errc::radius_below_bound, "claimed squared radius is below 1/2, impossible for a properly biharmonic quadratic map");

  HypersphereAnalysis<T> out;
  out.claimed_radius_sq = claimed_radius_sq;

  if (ScalarTraits<T>::eq(claimed_radius_sq, half, tol)) {
    out.case_id = 1;
    out.inner_radius_sq = half;
    out.psi_harmonic = true;
    for (int k = 0; k < n; ++k)
      if (!ScalarTraits<T>::is_zero(map.matrices()[static_cast<std::size_t>(k)].trace(), tol)) out.psi_harmonic = false;
    out.full = true;
    out.notes = "squared radius exactly 1/2; the first " + std::to_string(n) + " components form a harmonic map";
    return out;
  }

  out.case_id = 2;
  const T t0 = ScalarTraits<T>::from_rational(rat(-1, 2 * (m + 1)));
  for (const auto& v : map.laplacian()) out.center.push_back(t0 * v);
  if (!ScalarTraits<T>::eq(out.center.back(), *c, tol))
    fail(Errc::condition_violated, "center of the inner sphere does not sit in the constant-coordinate hyperplane");
  out.inner_radius_sq = one - dot(out.center, out.center);
  if (!ScalarTraits<T>::eq(out.inner_radius_sq, half, tol))
    fail(Errc::condition_violated, "inner sphere does not have squared radius 1/2");

  // Recentred components A_k - center_k * I: all traceless makes the map
  // into the inner sphere harmonic, and their squared norm must be
  // (1/2)|x|^4.
  out.psi_harmonic = true;
  HomoPoly<T> gsq(static_cast<int>(m + 1), 4);
  for (int k = 0; k <= n; ++k) {
    Matrix<T> g = map.matrices()[static_cast<std::size_t>(k)] - Matrix<T>::identity(static_cast<int>(m + 1)).scaled(out.center[static_cast<std::size_t>(k)]);
    if (!ScalarTraits<T>::is_zero(g.trace(), tol)) out.psi_harmonic = false;
    HomoPoly<T> q = quad_form(g, tol);
    gsq += mul(q, q, exec);
  }
  HomoPoly<T> r2 = radius_sq_poly<T>(static_cast<int>(m + 1));
  gsq -= mul(r2, r2, exec).scaled(half);
  if (!gsq.is_zero(tol))
    fail(Errc::condition_violated, "image does not lie on the located inner sphere");

  bool laplacian_tilted = false;
  for (int k = 0; k < n; ++k)
    if (!ScalarTraits<T>::is_zero(map.laplacian()[static_cast<std::size_t>(k)], tol)) laplacian_tilted = true;
  out.full = false;
  out.notes = std::string("squared radius above 1/2; image lies in a totally geodesic subsphere of squared radius 1/2") + (laplacian_tilted ? "" : "; laplacian aligned with the constant coordinate");
  return out;
}

}  // namespace qsm

#endif
