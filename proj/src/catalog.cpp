#include "qsm/catalog.hpp"

#include <array>
#include <utility>

namespace qsm {
namespace {

using SM = Matrix<Surd>;

SM zeros(int d) { return SM(d, d); }

SM diag4(long a, long b, long c, long d) {
  SM m = zeros(4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

/// Matrix of a component polynomial given the coefficients of the cross
/// terms x^i x^j (1-based, i < j): the matrix entry is half the coefficient.
SM cross4(std::initializer_list<std::pair<std::pair<int, int>, Surd>> entries) {
  SM m = zeros(4);
  const Surd half = Rational(1, 2);
  for (const auto& [ij, coeff] : entries) {
    m(ij.first - 1, ij.second - 1) = coeff * half;
    m(ij.second - 1, ij.first - 1) = coeff * half;
  }
  return m;
}

const Surd kSqrt2 = Surd::sqrt2();
const Surd kSqrt3 = Surd::sqrt3();
const Surd kHalfSqrt2 = Surd::make(0, Rational(1, 2), 0, 0);

QuadMap<Surd> hopf_map() {
  std::vector<SM> a;
  a.push_back(diag4(1, 1, -1, -1));
  a.push_back(cross4({{{1, 3}, 2}, {{2, 4}, -2}}));
  a.push_back(cross4({{{1, 4}, 2}, {{2, 3}, 2}}));
  return QuadMap<Surd>::validated(std::move(a));
}

QuadMap<Surd> phi4_map() {
  std::vector<SM> a;
  a.push_back(diag4(1, 1, -1, -1));
  a.push_back(cross4({{{1, 3}, 2}}));
  a.push_back(cross4({{{1, 4}, 2}}));
  a.push_back(cross4({{{2, 3}, 2}}));
  a.push_back(cross4({{{2, 4}, 2}}));
  return QuadMap<Surd>::validated(std::move(a));
}

QuadMap<Surd> phi5_map() {
  std::vector<SM> a;
  a.push_back(diag4(1, -1, 0, 0));
  a.push_back(diag4(0, 0, 1, -1));
  a.push_back(cross4({{{1, 2}, 2}}));
  a.push_back(cross4({{{1, 3}, kSqrt2}, {{2, 4}, kSqrt2}}));
  a.push_back(cross4({{{2, 3}, kSqrt2}, {{1, 4}, -kSqrt2}}));
  a.push_back(cross4({{{3, 4}, 2}}));
  return QuadMap<Surd>::validated(std::move(a));
}

QuadMap<Surd> phi6_map() {
  std::vector<SM> a;
  a.push_back(diag4(1, 1, -1, -1).scaled(kHalfSqrt2));
  a.push_back(diag4(1, -1, 0, 0).scaled(kHalfSqrt2));
  a.push_back(diag4(0, 0, 1, -1).scaled(kHalfSqrt2));
  a.push_back(cross4({{{1, 2}, kSqrt2}}));
  a.push_back(cross4({{{1, 3}, kSqrt3}, {{2, 4}, kSqrt3}}));
  a.push_back(cross4({{{2, 3}, kSqrt3}, {{1, 4}, -kSqrt3}}));
  a.push_back(cross4({{{3, 4}, kSqrt2}}));
  return QuadMap<Surd>::validated(std::move(a));
}

QuadMap<Surd> phi7_map() {
  std::vector<SM> a;
  a.push_back(diag4(1, -1, 0, 0));
  a.push_back(diag4(0, 0, 1, -1));
  a.push_back(cross4({{{1, 2}, 2}}));
  a.push_back(cross4({{{1, 3}, kSqrt2}}));
  a.push_back(cross4({{{1, 4}, kSqrt2}}));
  a.push_back(cross4({{{2, 3}, kSqrt2}}));
  a.push_back(cross4({{{2, 4}, kSqrt2}}));
  a.push_back(cross4({{{3, 4}, 2}}));
  return QuadMap<Surd>::validated(std::move(a));
}

/// Orthonormal basis of traceless symmetric (m+1)x(m+1) matrices under
/// tr(AB), with every entry in the scalar field (possible for m <= 3):
/// staircase diagonal vectors (1,...,1,-k,0,...)/sqrt(k(k+1)) followed by
/// symmetrized unit pairs /sqrt(2).
std::vector<SM> traceless_orthonormal_basis(int d) {
  std::vector<SM> basis;
  for (int k = 1; k < d; ++k) {
    auto root = sqrt_if_exact(Surd(Rational(static_cast<long>(k) * (k + 1))));
    if (!root) fail(Errc::dimension_mismatch, "no exact orthonormal diagonal basis in this scalar field for dimension " + std::to_string(d));
    Surd inv = root->inverse();
    SM b = zeros(d);
    for (int i = 0; i < k; ++i) b(i, i) = inv;
    b(k, k) = Surd(Rational(-k)) * inv;
    basis.push_back(std::move(b));
  }
  const Surd inv_sqrt2 = kHalfSqrt2;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      SM b = zeros(d);
      b(i, j) = inv_sqrt2;
      b(j, i) = inv_sqrt2;
      basis.push_back(std::move(b));
    }
  return basis;
}

const std::array<std::array<long, 3>, 5> kPythagorean = {{{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}, {20, 21, 29}}};

std::string format_surd_matrix_size(const QuadMap<Surd>& m) {
  return "S^" + std::to_string(m.m()) + " -> S^" + std::to_string(m.n());
}

CatalogEntry entry_of(std::string name, QuadMap<Surd> map, Verdict expected, std::string description) {
  return CatalogEntry{std::move(name), std::move(map), expected, std::move(description)};
}

}  // namespace

QuadMap<Surd> standard_eigenmap(int m) {
  if (m < 1) fail(Errc::dimension_mismatch, "domain sphere dimension must be positive");
  const int d = m + 1;
  auto scale = sqrt_if_exact(Surd(Rational(m + 1, m)));
  if (!scale) fail(Errc::dimension_mismatch, "no exact spherical scaling in this scalar field for dimension " + std::to_string(d));
  std::vector<SM> a;
  for (auto& b : traceless_orthonormal_basis(d)) a.push_back(b.scaled(*scale));
  return QuadMap<Surd>::validated(std::move(a));
}

std::vector<Matrix<Surd>> quaternion_product_tables() {
  // (z*w)_c = z^t M_c w for quaternions z = z1 + z2 i + z3 j + z4 k.
  std::vector<SM> m(4, zeros(4));
  auto set = [&](int c, int r, int s, long v) { m[static_cast<std::size_t>(c)](r, s) = v; };
  set(0, 0, 0, 1);
  set(0, 1, 1, -1);
  set(0, 2, 2, -1);
  set(0, 3, 3, -1);
  set(1, 0, 1, 1);
  set(1, 1, 0, 1);
  set(1, 2, 3, 1);
  set(1, 3, 2, -1);
  set(2, 0, 2, 1);
  set(2, 1, 3, -1);
  set(2, 2, 0, 1);
  set(2, 3, 1, 1);
  set(3, 0, 3, 1);
  set(3, 1, 2, 1);
  set(3, 2, 1, -1);
  set(3, 3, 0, 1);
  return m;
}

namespace {

template <class T>
std::vector<Matrix<T>> f_lambda_matrices(const T& lambda, const T& mu, const T& nu) {
  auto tables = quaternion_product_tables();
  std::vector<Matrix<T>> a;
  Matrix<T> a1(8, 8);
  for (int i = 0; i < 4; ++i) {
    a1(i, i) = ScalarTraits<T>::one();
    a1(i + 4, i + 4) = lambda;
  }
  a.push_back(std::move(a1));
  const T half = ScalarTraits<T>::from_rational(rat(1, 2));
  for (const auto& table : tables) {
    Matrix<T> ac(8, 8);
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s) {
        T v = mu * half * ScalarTraits<T>::from_rational(table(r, s).q());
        ac(r, 4 + s) = v;
        ac(4 + s, r) = v;
      }
    a.push_back(std::move(ac));
  }
  Matrix<T> a6(8, 8);
  for (int i = 4; i < 8; ++i) a6(i, i) = nu;
  a.push_back(std::move(a6));
  return a;
}

}  // namespace

QuadMap<Surd> make_f_lambda(const Rational& lambda) {
  if (lambda < 0 || lambda >= 1) fail(Errc::lambda_out_of_range, "family parameter " + format_rational(lambda) + " outside [0, 1)");
  auto mu = sqrt_if_exact(Surd(Rational(2) * (1 - lambda)));
  auto nu = sqrt_if_exact(Surd(1 - lambda * lambda));
  if (!mu || !nu)
    fail(Errc::inexact_lambda, "family parameter " + format_rational(lambda) + " needs square roots outside the scalar field; use the float backend");
  return QuadMap<Surd>::validated(f_lambda_matrices<Surd>(Surd(lambda), *mu, *nu));
}

QuadMap<double> make_f_lambda_float(double lambda, double tol) {
  if (lambda < 0 || lambda >= 1) fail(Errc::lambda_out_of_range, "family parameter outside [0, 1)");
  const double mu = std::sqrt(2.0 * (1.0 - lambda));
  const double nu = std::sqrt(1.0 - lambda * lambda);
  return QuadMap<double>::validated(f_lambda_matrices<double>(lambda, mu, nu), tol);
}

std::vector<std::string> catalog_names() {
  return {
      "complex_squaring", "hopf", "phi4", "phi5", "phi6", "phi7", "phi8", "veronese",
      "f_lambda:0", "f_lambda:1/3", "f_lambda:1/2",
      "lift:hopf", "lift:phi4", "lift:phi5", "lift:phi6", "lift:phi7", "lift:phi8", "lift:veronese", "lift:complex_squaring",
  };
}

CatalogEntry catalog_get(const std::string& name) {
  if (name == "complex_squaring")
    return entry_of(name, standard_eigenmap(1), Verdict::Harmonic, "Complex squaring z -> z^2 on the unit circle");
  if (name == "hopf" || name == "phi2")
    return entry_of("hopf", hopf_map(), Verdict::Harmonic, "Hopf construction S^3 -> S^2");
  if (name == "phi4")
    return entry_of(name, phi4_map(), Verdict::Harmonic, "Full harmonic eigenmap S^3 -> S^4");
  if (name == "phi5")
    return entry_of(name, phi5_map(), Verdict::Harmonic, "Full harmonic eigenmap S^3 -> S^5");
  if (name == "phi6")
    return entry_of(name, phi6_map(), Verdict::Harmonic, "Full harmonic eigenmap S^3 -> S^6");
  if (name == "phi7")
    return entry_of(name, phi7_map(), Verdict::Harmonic, "Full harmonic eigenmap S^3 -> S^7");
  if (name == "phi8")
    return entry_of(name, standard_eigenmap(3), Verdict::Harmonic, "Standard minimal immersion by degree-2 spherical harmonics, S^3 -> S^8");
  if (name == "veronese")
    return entry_of(name, standard_eigenmap(2), Verdict::Harmonic, "Veronese map S^2 -> S^4");
  if (name.rfind("f_lambda:", 0) == 0) {
    Rational lambda;
    try {
      lambda = parse_rational(name.substr(9));
    } catch (const Error&) {
      fail(Errc::unknown_name, "unknown catalog name: " + name);
    }
    QuadMap<Surd> map = make_f_lambda(lambda);
    Verdict expected = (lambda == 0) ? Verdict::ProperBiharmonic : Verdict::Neither;
    return entry_of("f_lambda:" + format_rational(lambda), std::move(map), expected,
                    "Quaternion-product family member on S^7 -> S^5, parameter " + format_rational(lambda));
  }
  if (name.rfind("lift:", 0) == 0) {
    CatalogEntry inner = catalog_get(name.substr(5));
    QuadMap<Surd> lifted = lift_unit(inner.map);
    std::string desc = "Lift of " + inner.name + " into " + format_surd_matrix_size(lifted) + " with constant last component 1/sqrt(2)";
    return entry_of("lift:" + inner.name, std::move(lifted), Verdict::ProperBiharmonic, std::move(desc));
  }
  fail(Errc::unknown_name, "unknown catalog name: " + name);
}

Matrix<Surd> plane_rotation(int size, int i, int j, const Rational& cos_v, const Rational& sin_v) {
  if (i < 0 || j < 0 || i >= size || j >= size || i == j) fail(Errc::dimension_mismatch, "invalid rotation plane");
  if (cos_v * cos_v + sin_v * sin_v != 1) fail(Errc::condition_violated, "rotation entries must satisfy cos^2 + sin^2 = 1");
  SM r = SM::identity(size);
  r(i, i) = cos_v;
  r(j, j) = cos_v;
  r(i, j) = -Surd(sin_v);
  r(j, i) = sin_v;
  return r;
}

Matrix<Surd> random_exact_orthogonal(int size, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) perm[static_cast<std::size_t>(i)] = i;
  // Hand-rolled Fisher-Yates: identical sequences on every platform.
  for (int i = size - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  SM p = zeros(size);
  for (int i = 0; i < size; ++i) p(i, perm[static_cast<std::size_t>(i)]) = (rng() & 1) ? Surd(1) : Surd(-1);
  SM result = p;
  if (size >= 2) {
    const int nrot = 2 + static_cast<int>(rng() % 3);
    for (int r = 0; r < nrot; ++r) {
      int i = static_cast<int>(rng() % static_cast<std::uint64_t>(size));
      int j = static_cast<int>(rng() % static_cast<std::uint64_t>(size));
      if (i == j) j = (j + 1) % size;
      const auto& t = kPythagorean[rng() % kPythagorean.size()];
      Rational c(t[0], t[2]);
      Rational s(t[1], t[2]);
      if (rng() & 1) s = -s;
      result = plane_rotation(size, i, j, c, s) * result;
    }
  }
  return result;
}

QuadMap<Surd> random_instance(std::uint64_t seed, const std::string& base, Scramble scramble) {
  CatalogEntry entry = catalog_get(base);
  std::mt19937_64 rng(seed);
  SM u = SM::identity(entry.map.m() + 1);
  SM v = SM::identity(entry.map.n() + 1);
  if (scramble == Scramble::domain || scramble == Scramble::both) u = random_exact_orthogonal(entry.map.m() + 1, rng);
  if (scramble == Scramble::codomain || scramble == Scramble::both) v = random_exact_orthogonal(entry.map.n() + 1, rng);
  return entry.map.transformed(u, v);
}

}  // namespace qsm
