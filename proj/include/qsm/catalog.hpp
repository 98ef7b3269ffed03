#ifndef QSM_CATALOG_HPP
#define QSM_CATALOG_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qsm/quadmap.hpp"

namespace qsm {

struct CatalogEntry {
  std::string name;
  QuadMap<Surd> map;
  Verdict expected;
  std::string description;
};

/// Canonical names listed by the CLI. Family entries appear with
/// representative parameters; `catalog_get` also accepts any
/// "f_lambda:<rational>" and "lift:<harmonic name>".
std::vector<std::string> catalog_names();

/// Resolves a catalog name to a validated entry.
CatalogEntry catalog_get(const std::string& name);

/// Quaternion-product family member on S^7 -> S^5:
///   ( |z|^2 + lambda |w|^2, sqrt(2(1-lambda)) z*w, sqrt(1-lambda^2) |w|^2 )
/// with z, w quaternions. Exact construction; lambda must lie in [0,1) and
/// both square roots must exist in the scalar field.
QuadMap<Surd> make_f_lambda(const Rational& lambda);

/// Float-backend construction of the same family for arbitrary lambda in
/// [0,1).
QuadMap<double> make_f_lambda_float(double lambda, double tol = kDefaultTol);

/// The squared-norm-preserving bilinear quaternion product as 4x8x8
/// coefficient matrices; P(z, w) component c is z^t M_c w.
std::vector<Matrix<Surd>> quaternion_product_tables();

/// Harmonic eigenmap built from an orthonormal basis of traceless symmetric
/// quadratic forms, scaled to be spherical: S^1 -> S^1 (m=1, complex
/// squaring), S^2 -> S^4 (m=2, Veronese), S^3 -> S^8 (m=3). Exact only for
/// m <= 3.
QuadMap<Surd> standard_eigenmap(int m);

/// (psi / sqrt(2), 1/sqrt(2)) for a harmonic unit-sphere map psi with
/// constant energy density; the result is properly biharmonic.
template <class T>
QuadMap<T> lift_unit(const QuadMap<T>& inner, Exec exec = Exec::parallel) {
  if (!inner.laplacian_is_zero()) fail(Errc::inner_not_harmonic, "inner map has nonzero laplacian");
  if (!inner.s_scalar()) fail(Errc::inner_energy_not_constant, "inner map does not have constant energy density");
  auto root_half = ScalarTraits<T>::sqrt(ScalarTraits<T>::from_rational(rat(1, 2)));
  if (!root_half) fail(Errc::exact_rotation_unavailable, "1/sqrt(2) not representable");
  std::vector<Matrix<T>> out;
  out.reserve(inner.matrices().size() + 1);
  for (const auto& a : inner.matrices()) out.push_back(a.scaled(*root_half));
  out.push_back(Matrix<T>::identity(inner.m() + 1).scaled(*root_half));
  return QuadMap<T>::validated(std::move(out), inner.tol(), exec);
}

/// Reassembles matrices already mapping into the sphere of squared radius
/// 1/2 (e.g. a factorization's extracted map) with the constant last
/// component 1/sqrt(2).
template <class T>
QuadMap<T> lift_scaled(const std::vector<Matrix<T>>& psi, double tol = kDefaultTol, Exec exec = Exec::parallel) {
  if (psi.empty()) fail(Errc::dimension_mismatch, "empty component list");
  const int d = psi.front().rows();
  for (const auto& a : psi)
    if (!ScalarTraits<T>::is_zero(a.trace(), tol)) fail(Errc::inner_not_harmonic, "inner components must be traceless");
  HomoPoly<T> sq(d, 4);
  for (const auto& a : psi) {
    HomoPoly<T> q = quad_form(a, tol);
    sq += mul(q, q, exec);
  }
  HomoPoly<T> r2 = radius_sq_poly<T>(d);
  sq -= mul(r2, r2, exec).scaled(ScalarTraits<T>::from_rational(rat(1, 2)));
  if (!sq.is_zero(tol)) fail(Errc::inner_energy_not_constant, "inner components do not map onto the sphere of squared radius 1/2");
  auto root_half = ScalarTraits<T>::sqrt(ScalarTraits<T>::from_rational(rat(1, 2)));
  std::vector<Matrix<T>> out = psi;
  out.push_back(Matrix<T>::identity(d).scaled(*root_half));
  return QuadMap<T>::validated(std::move(out), tol, exec);
}

/// Appends zero component matrices (enlarging the codomain sphere), then
/// optionally rotates the codomain. Classification is unaffected.
template <class T>
QuadMap<T> pad(const QuadMap<T>& map, int extra_zero_components, const std::optional<Matrix<T>>& rotation = std::nullopt, Exec exec = Exec::parallel) {
  if (extra_zero_components < 0) fail(Errc::dimension_mismatch, "negative component count");
  std::vector<Matrix<T>> out = map.matrices();
  for (int i = 0; i < extra_zero_components; ++i) out.emplace_back(map.m() + 1, map.m() + 1);
  QuadMap<T> padded = QuadMap<T>::validated(std::move(out), map.tol(), exec);
  if (!rotation) return padded;
  return padded.transformed(Matrix<T>::identity(map.m() + 1), *rotation, std::nullopt, exec);
}

enum class Scramble { domain, codomain, both };

/// Deterministic exact orthogonal matrix: a signed permutation composed
/// with a few Pythagorean-triple plane rotations.
Matrix<Surd> random_exact_orthogonal(int size, std::mt19937_64& rng);

/// Seeded exact scrambling of a catalog base map by orthogonal transforms.
/// Same seed, base, and mode always produce the same map.
QuadMap<Surd> random_instance(std::uint64_t seed, const std::string& base, Scramble scramble = Scramble::both);

/// Exact plane rotation by a Pythagorean angle: cos = a/c, sin = b/c in the
/// (i, j) coordinate plane.
Matrix<Surd> plane_rotation(int size, int i, int j, const Rational& cos_v, const Rational& sin_v);

}  // namespace qsm

#endif
