#ifndef QSM_POLY_HPP
#define QSM_POLY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qsm/errors.hpp"
#include "qsm/matrix.hpp"
#include "qsm/monomial.hpp"
#include "qsm/parallel.hpp"
#include "qsm/scalar.hpp"

namespace qsm {

/// Sparse homogeneous polynomial with a declared degree. The zero polynomial
/// of any degree has an empty term map; exact zero coefficients are never
/// stored. Terms iterate leading-first (graded lex, greatest first).
template <class T>
class HomoPoly {
public:
  using TermMap = std::map<Monomial, T, GrlexGreater>;

  HomoPoly() : nvars_(0), degree_(0) {}
  HomoPoly(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 0 || degree < 0) fail(Errc::degree_mismatch, "negative polynomial shape");
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Monomial& mono, const T& c) {
    if (mono.nvars() != nvars_) fail(Errc::dimension_mismatch, "monomial variable count mismatch");
    if (mono.degree() != degree_) fail(Errc::degree_mismatch, "monomial degree " + std::to_string(mono.degree()) + " in degree-" + std::to_string(degree_) + " polynomial");
    if (ScalarTraits<T>::is_exact_zero(c)) return;
    auto [it, fresh] = terms_.emplace(mono, c);
    if (!fresh) {
      it->second += c;
      if (ScalarTraits<T>::is_exact_zero(it->second)) terms_.erase(it);
    }
  }

  T coeff(const Monomial& mono) const {
    if (mono.nvars() != nvars_) fail(Errc::dimension_mismatch, "monomial variable count mismatch");
    if (mono.degree() != degree_) fail(Errc::degree_mismatch, "querying degree-" + std::to_string(mono.degree()) + " monomial in degree-" + std::to_string(degree_) + " polynomial");
    auto it = terms_.find(mono);
    return it == terms_.end() ? ScalarTraits<T>::zero() : it->second;
  }

  HomoPoly& operator+=(const HomoPoly& o) {
    check_same_shape(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
  }

  HomoPoly& operator-=(const HomoPoly& o) {
    check_same_shape(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
  }

  HomoPoly operator+(const HomoPoly& o) const {
    HomoPoly out = *this;
    out += o;
    return out;
  }

  HomoPoly operator-(const HomoPoly& o) const {
    HomoPoly out = *this;
    out -= o;
    return out;
  }

  HomoPoly scaled(const T& c) const {
    HomoPoly out(nvars_, degree_);
    if (ScalarTraits<T>::is_exact_zero(c)) return out;
    for (const auto& [mono, v] : terms_) out.add_term(mono, v * c);
    return out;
  }

  bool is_exactly_zero() const { return terms_.empty(); }

  bool is_zero(double tol) const {
    for (const auto& [mono, c] : terms_)
      if (!ScalarTraits<T>::is_zero(c, tol)) return false;
    return true;
  }

  static bool equal(const HomoPoly& a, const HomoPoly& b, double tol) {
    if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_) return false;
    return (a - b).is_zero(tol);
  }

  T eval(const std::vector<T>& x) const {
    if (static_cast<int>(x.size()) != nvars_) fail(Errc::dimension_mismatch, "evaluation point has wrong dimension");
    T total = ScalarTraits<T>::zero();
    for (const auto& [mono, c] : terms_) {
      T term = c;
      for (int k = 0; k < nvars_; ++k)
        for (int e = 0; e < mono.exps[static_cast<std::size_t>(k)]; ++e) term = term * x[static_cast<std::size_t>(k)];
      total += term;
    }
    return total;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [mono, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + ScalarTraits<T>::str(c) + ")*" + mono.str();
    }
    return s;
  }

private:
  void check_same_shape(const HomoPoly& o) const {
    if (nvars_ != o.nvars_) fail(Errc::dimension_mismatch, "polynomial variable count mismatch");
    if (degree_ != o.degree_) fail(Errc::degree_mismatch, "adding degree " + std::to_string(o.degree_) + " to degree " + std::to_string(degree_));
  }

  int nvars_;
  int degree_;
  TermMap terms_;
};

/// Reference product: plain double loop into one accumulator map.
template <class T>
HomoPoly<T> mul_serial(const HomoPoly<T>& a, const HomoPoly<T>& b) {
  if (a.nvars() != b.nvars()) fail(Errc::dimension_mismatch, "polynomial variable count mismatch");
  HomoPoly<T> out(a.nvars(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add_term(ma * mb, ca * cb);
  return out;
}

/// OpenMP product: partitions the left factor's terms, accumulates into
/// thread-local maps, merges. Falls back to the serial reference for small
/// products or when nested in a parallel region.
template <class T>
HomoPoly<T> mul(const HomoPoly<T>& a, const HomoPoly<T>& b, Exec exec = Exec::parallel) {
  constexpr std::size_t kParallelThreshold = 4096;
  const std::size_t work = a.term_count() * b.term_count();
  if (exec == Exec::serial || inside_parallel_region() || max_threads() == 1 || work < kParallelThreshold)
    return mul_serial(a, b);

  if (a.nvars() != b.nvars()) fail(Errc::dimension_mismatch, "polynomial variable count mismatch");

  std::vector<std::pair<const Monomial*, const T*>> left;
  left.reserve(a.term_count());
  for (const auto& [mono, c] : a.terms()) left.emplace_back(&mono, &c);

  const int nchunks = max_threads();
  std::vector<HomoPoly<T>> partial(static_cast<std::size_t>(nchunks), HomoPoly<T>(a.nvars(), a.degree() + b.degree()));
  const long nterms = static_cast<long>(left.size());

  parallel_for(static_cast<long>(nchunks), Exec::parallel, [&](long chunk) {
    const long lo = nterms * chunk / nchunks;
    const long hi = nterms * (chunk + 1) / nchunks;
    HomoPoly<T>& acc = partial[static_cast<std::size_t>(chunk)];
    for (long i = lo; i < hi; ++i)
      for (const auto& [mb, cb] : b.terms()) acc.add_term(*left[static_cast<std::size_t>(i)].first * mb, *left[static_cast<std::size_t>(i)].second * cb);
  });

  HomoPoly<T> out(a.nvars(), a.degree() + b.degree());
  for (auto& p : partial) out += p;
  return out;
}

/// X^t A X as a degree-2 polynomial; A must be square and symmetric.
template <class T>
HomoPoly<T> quad_form(const Matrix<T>& a, double tol) {
  if (!a.is_square()) fail(Errc::dimension_mismatch, "quadratic form of non-square matrix");
  if (!a.is_symmetric(tol)) fail(Errc::not_symmetric, "quadratic form of non-symmetric matrix");
  const int n = a.rows();
  HomoPoly<T> p(n, 2);
  for (int i = 0; i < n; ++i) {
    Monomial sq(n);
    sq.exps[static_cast<std::size_t>(i)] = 2;
    p.add_term(sq, a(i, i));
    for (int j = i + 1; j < n; ++j) {
      Monomial cross(n);
      cross.exps[static_cast<std::size_t>(i)] = 1;
      cross.exps[static_cast<std::size_t>(j)] = 1;
      p.add_term(cross, a(i, j) + a(j, i));
    }
  }
  return p;
}

/// |x|^2 = x_1^2 + ... + x_n^2.
template <class T>
HomoPoly<T> radius_sq_poly(int nvars) {
  HomoPoly<T> p(nvars, 2);
  for (int i = 0; i < nvars; ++i) {
    Monomial sq(nvars);
    sq.exps[static_cast<std::size_t>(i)] = 2;
    p.add_term(sq, ScalarTraits<T>::one());
  }
  return p;
}

template <class T>
using PolyVec = std::vector<HomoPoly<T>>;

template <class T>
PolyVec<T> polyvec_add(const PolyVec<T>& a, const PolyVec<T>& b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "component count mismatch");
  PolyVec<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

template <class T>
PolyVec<T> polyvec_sub(const PolyVec<T>& a, const PolyVec<T>& b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "component count mismatch");
  PolyVec<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

template <class T>
PolyVec<T> polyvec_scaled(const PolyVec<T>& a, const T& c) {
  PolyVec<T> out;
  out.reserve(a.size());
  for (const auto& p : a) out.push_back(p.scaled(c));
  return out;
}

template <class T>
bool polyvec_is_zero(const PolyVec<T>& a, double tol) {
  for (const auto& p : a)
    if (!p.is_zero(tol)) return false;
  return true;
}

template <class T>
std::vector<T> polyvec_eval(const PolyVec<T>& a, const std::vector<T>& x) {
  std::vector<T> out;
  out.reserve(a.size());
  for (const auto& p : a) out.push_back(p.eval(x));
  return out;
}

/// Sum of squared components.
template <class T>
HomoPoly<T> norm_sq(const PolyVec<T>& a, int nvars, Exec exec = Exec::parallel) {
  int degree = a.empty() ? 0 : a.front().degree();
  HomoPoly<T> out(nvars, 2 * degree);
  for (const auto& p : a) out += mul(p, p, exec);
  return out;
}

}  // namespace qsm

#endif
