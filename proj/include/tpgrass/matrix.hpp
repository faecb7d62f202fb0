#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tpgrass/scalar.hpp"

namespace tpgrass {

// Dense row-major matrix over an exact-rational or floating scalar. Immutable in
// spirit: every operation returns a fresh value.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, T(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimensions");
  }
  Matrix(int rows, int cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != static_cast<std::size_t>(rows) * cols)
      throw std::invalid_argument("Matrix: data size does not match dimensions");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool operator==(const Matrix& o) const = default;

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix multiply: inner dimensions differ");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int l = 0; l < cols_; ++l) {
        const T& a = (*this)(i, l);
        if (a == T(0)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(l, j);
      }
    return r;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Matrix apply: size mismatch");
    std::vector<T> y(static_cast<std::size_t>(rows_), T(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  // Submatrix by 0-based row/column index lists.
  Matrix submatrix(const std::vector<int>& ri, const std::vector<int>& ci) const {
    Matrix s(static_cast<int>(ri.size()), static_cast<int>(ci.size()));
    for (std::size_t a = 0; a < ri.size(); ++a)
      for (std::size_t b = 0; b < ci.size(); ++b) s(static_cast<int>(a), static_cast<int>(b)) = (*this)(ri[a], ci[b]);
    return s;
  }

  std::vector<T> row(int i) const {
    std::vector<T> r(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column counts differ");
  Matrix<T> s(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s(a.rows() + i, j) = b(i, j);
  return s;
}

inline Matrix<double> to_floating(const Matrix<Rational>& m) {
  Matrix<double> f(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) f(i, j) = to_double(m(i, j));
  return f;
}

namespace detail {

inline double max_abs(const Matrix<double>& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s = std::max(s, std::fabs(m(i, j)));
  return s;
}

}  // namespace detail

// Determinant. Exact scalars use fraction-free (Bareiss) elimination: every
// intermediate entry is a minor of the input, so rationals never compound.
// Floating scalars use partially pivoted elimination.
template <typename T>
T det(Matrix<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  const int n = m.rows();
  if (n == 0) return T(1);
  if constexpr (is_exact_scalar_v<T>) {
    T prev(1);
    int sign = 1;
    for (int c = 0; c < n - 1; ++c) {
      int piv = -1;
      for (int i = c; i < n; ++i)
        if (m(i, c) != T(0)) {
          piv = i;
          break;
        }
      if (piv < 0) return T(0);
      if (piv != c) {
        for (int j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
        sign = -sign;
      }
      for (int i = c + 1; i < n; ++i) {
        for (int j = c + 1; j < n; ++j) m(i, j) = (m(i, j) * m(c, c) - m(i, c) * m(c, j)) / prev;
        m(i, c) = T(0);
      }
      prev = m(c, c);
    }
    T d = m(n - 1, n - 1);
    return sign < 0 ? T(-d) : d;
  } else {
    double d = 1.0;
    for (int c = 0; c < n; ++c) {
      int piv = c;
      for (int i = c + 1; i < n; ++i)
        if (abs_of(m(i, c)) > abs_of(m(piv, c))) piv = i;
      if (m(piv, c) == T(0)) return T(0);
      if (piv != c) {
        for (int j = c; j < n; ++j) std::swap(m(c, j), m(piv, j));
        d = -d;
      }
      d *= m(c, c);
      for (int i = c + 1; i < n; ++i) {
        T f = m(i, c) / m(c, c);
        for (int j = c + 1; j < n; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return d;
  }
}

// Rank by elimination with column skips. `tol` is the relative zero threshold for
// floating inputs (ignored in exact mode): a pivot below tol * max|entry| is zero.
template <typename T>
int rank(Matrix<T> m, double tol = kDefaultTolerance) {
  const int nr = m.rows(), nc = m.cols();
  double floor = 0.0;
  if constexpr (!is_exact_scalar_v<T>) floor = tol * detail::max_abs(m);
  T prev(1);
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int piv = -1;
    if constexpr (is_exact_scalar_v<T>) {
      for (int i = r; i < nr; ++i)
        if (m(i, c) != T(0)) {
          piv = i;
          break;
        }
    } else {
      piv = r;
      for (int i = r + 1; i < nr; ++i)
        if (abs_of(m(i, c)) > abs_of(m(piv, c))) piv = i;
      if (abs_of(m(piv, c)) <= floor) piv = -1;
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < nc; ++j) std::swap(m(r, j), m(piv, j));
    for (int i = r + 1; i < nr; ++i) {
      if constexpr (is_exact_scalar_v<T>) {
        for (int j = c + 1; j < nc; ++j) m(i, j) = (m(i, j) * m(r, c) - m(i, c) * m(r, j)) / prev;
      } else {
        T f = m(i, c) / m(r, c);
        for (int j = c + 1; j < nc; ++j) m(i, j) -= f * m(r, j);
      }
      m(i, c) = T(0);
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

// Reduced row echelon form; returns the pivot columns. Exact over rationals;
// floating uses the same relative pivot threshold as rank().
template <typename T>
std::vector<int> rref_in_place(Matrix<T>& m, double tol = kDefaultTolerance) {
  const int nr = m.rows(), nc = m.cols();
  double floor = 0.0;
  if constexpr (!is_exact_scalar_v<T>) floor = tol * detail::max_abs(m);
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int piv = -1;
    if constexpr (is_exact_scalar_v<T>) {
      for (int i = r; i < nr; ++i)
        if (m(i, c) != T(0)) {
          piv = i;
          break;
        }
    } else {
      piv = r;
      for (int i = r + 1; i < nr; ++i)
        if (abs_of(m(i, c)) > abs_of(m(piv, c))) piv = i;
      if (abs_of(m(piv, c)) <= floor) piv = -1;
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < nc; ++j) std::swap(m(r, j), m(piv, j));
    T inv = T(1) / m(r, c);
    for (int j = c; j < nc; ++j) m(r, j) *= inv;
    for (int i = 0; i < nr; ++i) {
      if (i == r) continue;
      T f = m(i, c);
      if (f == T(0)) continue;
      for (int j = c; j < nc; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis of the right null space {x : M x = 0}, one basis vector per row of the
// result. Deterministic: free variables are taken in increasing column order.
template <typename T>
Matrix<T> kernel(Matrix<T> m, double tol = kDefaultTolerance) {
  const int nc = m.cols();
  std::vector<int> pivots = rref_in_place(m, tol);
  std::vector<bool> is_pivot(static_cast<std::size_t>(nc), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix<T> basis(nc - static_cast<int>(pivots.size()), nc);
  int row = 0;
  for (int f = 0; f < nc; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(row, f) = T(1);
    for (std::size_t p = 0; p < pivots.size(); ++p) basis(row, pivots[p]) = -m(static_cast<int>(p), f);
    ++row;
  }
  return basis;
}

}  // namespace tpgrass
