#ifndef QSM_MATRIX_HPP
#define QSM_MATRIX_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qsm/errors.hpp"
#include "qsm/scalar.hpp"

namespace qsm {

/// Dense row-major matrix over an exact or floating scalar. Sized for the
/// small orders this toolkit needs (domain/codomain dimensions below ~16),
/// so no care is taken about cache blocking.
template <class T>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, ScalarTraits<T>::zero()) {
    if (rows < 0 || cols < 0) fail(Errc::dimension_mismatch, "negative matrix dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += o.data_[k];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] -= o.data_[k];
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) fail(Errc::dimension_mismatch, "matrix product shape mismatch");
    Matrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (ScalarTraits<T>::is_exact_zero(a)) continue;
        for (int j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  Matrix scaled(const T& c) const {
    Matrix out = *this;
    for (auto& v : out.data_) v = v * c;
    return out;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  T trace() const {
    if (rows_ != cols_) fail(Errc::dimension_mismatch, "trace of non-square matrix");
    T t = ScalarTraits<T>::zero();
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_square() const { return rows_ == cols_; }

  bool is_symmetric(double tol) const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (!ScalarTraits<T>::eq((*this)(i, j), (*this)(j, i), tol)) return false;
    return true;
  }

  bool is_zero(double tol) const {
    for (const auto& v : data_)
      if (!ScalarTraits<T>::is_zero(v, tol)) return false;
    return true;
  }

  static bool equal(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!ScalarTraits<T>::eq(a.data_[k], b.data_[k], tol)) return false;
    return true;
  }

  /// The alpha with *this == alpha * I, when it exists.
  std::optional<T> scalar_multiple_of_identity(double tol) const {
    if (!is_square() || rows_ == 0) return std::nullopt;
    const T& alpha = (*this)(0, 0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        if (i == j) {
          if (!ScalarTraits<T>::eq((*this)(i, j), alpha, tol)) return std::nullopt;
        } else {
          if (!ScalarTraits<T>::is_zero((*this)(i, j), tol)) return std::nullopt;
        }
      }
    return alpha;
  }

private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::dimension_mismatch, "matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<T> data_;
};

template <class T>
Matrix<double> to_double_matrix(const Matrix<T>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = ScalarTraits<T>::to_double(m(i, j));
  return out;
}

/// U^t U == I, exactly for the Surd backend, entrywise within tol for double.
template <class T>
bool is_orthogonal(const Matrix<T>& u, double tol) {
  if (!u.is_square()) return false;
  return Matrix<T>::equal(u.transposed() * u, Matrix<T>::identity(u.rows()), tol);
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending.
/// Plenty for the small verification matrices here; not a general solver.
std::vector<double> symmetric_eigenvalues(Matrix<double> a);

}  // namespace qsm

#endif
