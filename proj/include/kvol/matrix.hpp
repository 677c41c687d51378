#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kvol/scalar.hpp"
#include "kvol/subsets.hpp"

namespace kvol {

/// Dense row-major matrix over a single scalar mode. Immutable by
/// convention after construction; all operations return fresh values.
template <ScalarType T>
class Matrix {
 public:
  Matrix() = default;

  Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    check_dims(rows, cols);
    data_.assign(static_cast<std::size_t>(rows) * cols, T(0));
  }

  Matrix(int rows, int cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    check_dims(rows, cols);
    if (data_.size() != static_cast<std::size_t>(rows) * cols) {
      throw std::domain_error("matrix entry count does not match dimensions");
    }
    for (const T& x : data_) require_finite(x);
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Builds the n x k matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<std::vector<T>>& columns) {
    const int k = static_cast<int>(columns.size());
    const int n = k == 0 ? 0 : static_cast<int>(columns.front().size());
    for (const auto& c : columns) {
      if (static_cast<int>(c.size()) != n) {
        throw std::domain_error("column vectors must share one length");
      }
    }
    Matrix m(n, k);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < n; ++i) {
        require_finite(columns[j][i]);
        m(i, j) = columns[j][i];
      }
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Mode mode() const { return mode_of<T>(); }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  std::vector<T> column(int j) const {
    std::vector<T> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  const std::vector<T>& entries() const { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  static void check_dims(int rows, int cols) {
    if (rows < 0 || cols < 0) {
      throw std::domain_error("matrix dimensions must be non-negative");
    }
  }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * cols_ + j;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

template <ScalarType T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

template <ScalarType T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw std::domain_error("mat_mul dimension mismatch: " +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()));
  }
  Matrix<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int l = 0; l < a.cols(); ++l) {
      const T& ail = a(i, l);
      if (ail == T(0)) continue;
      for (int j = 0; j < b.cols(); ++j) {
        c(i, j) += ail * b(l, j);
      }
    }
  }
  return c;
}

namespace detail {

// Fraction-free Bareiss elimination. Each row is first scaled by the lcm of
// its denominators so the elimination runs over integers; the accumulated
// scale is divided back out of the final determinant. Intermediate entries
// stay minors of the integer matrix, so the divisions are exact.
inline Rational det_bareiss(const Matrix<Rational>& a) {
  const int n = a.rows();
  std::vector<Integer> m(static_cast<std::size_t>(n) * n);
  Integer scale = 1;
  for (int i = 0; i < n; ++i) {
    Integer l = 1;
    for (int j = 0; j < n; ++j) l = lcm(l, denominator(a(i, j)));
    scale *= l;
    for (int j = 0; j < n; ++j) {
      const Rational& x = a(i, j);
      m[static_cast<std::size_t>(i) * n + j] =
          numerator(x) * (l / denominator(x));
    }
  }

  auto at = [&](int i, int j) -> Integer& {
    return m[static_cast<std::size_t>(i) * n + j];
  };

  int sign = 1;
  Integer prev = 1;
  for (int c = 0; c + 1 < n; ++c) {
    if (at(c, c) == 0) {
      int p = -1;
      for (int r = c + 1; r < n; ++r) {
        if (at(r, c) != 0) {
          p = r;
          break;
        }
      }
      if (p < 0) return Rational(0);
      for (int j = 0; j < n; ++j) std::swap(at(c, j), at(p, j));
      sign = -sign;
    }
    for (int i = c + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j) {
        at(i, j) = (at(c, c) * at(i, j) - at(i, c) * at(c, j)) / prev;
      }
      at(i, c) = 0;
    }
    prev = at(c, c);
  }

  Integer det = at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return Rational(det, scale);
}

// Gaussian elimination with partial pivoting; the determinant is the signed
// product of pivots. Pivots below 1e-300 in magnitude are treated as
// structural zeros rather than divided by.
inline double det_lu(const Matrix<double>& a) {
  const int n = a.rows();
  std::vector<double> m(a.entries().begin(), a.entries().end());
  auto at = [&](int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * n + j];
  };

  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::fabs(at(r, c)) > std::fabs(at(p, c))) p = r;
    }
    if (std::fabs(at(p, c)) < 1e-300) return 0.0;
    if (p != c) {
      for (int j = c; j < n; ++j) std::swap(at(c, j), at(p, j));
      det = -det;
    }
    det *= at(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = at(r, c) / at(c, c);
      for (int j = c + 1; j < n; ++j) at(r, j) -= f * at(c, j);
    }
  }
  return det;
}

}  // namespace detail

/// Determinant: Bareiss in exact mode, partial-pivot elimination in float
/// mode. det of the empty 0x0 matrix is 1 (empty product).
template <ScalarType T>
T determinant(const Matrix<T>& a) {
  if (a.rows() != a.cols()) {
    throw std::domain_error("determinant requires a square matrix");
  }
  if (a.rows() == 0) return T(1);
  if constexpr (std::same_as<T, Rational>) {
    return detail::det_bareiss(a);
  } else {
    return detail::det_lu(a);
  }
}

/// A^t A with symmetry guaranteed by construction: each entry is computed
/// once and mirrored.
template <ScalarType T>
class GramMatrix {
 public:
  explicit GramMatrix(const Matrix<T>& a) : m_(a.cols(), a.cols()) {
    for (int i = 0; i < a.cols(); ++i) {
      for (int j = i; j < a.cols(); ++j) {
        T dot(0);
        for (int r = 0; r < a.rows(); ++r) dot += a(r, i) * a(r, j);
        m_(i, j) = dot;
        m_(j, i) = dot;
      }
    }
  }

  const Matrix<T>& matrix() const { return m_; }
  int size() const { return m_.rows(); }

 private:
  Matrix<T> m_;
};

template <ScalarType T>
GramMatrix<T> gram(const Matrix<T>& a) {
  return GramMatrix<T>(a);
}

namespace detail {

inline void check_subset_range(const SubsetIndex& s, int limit,
                               const char* what) {
  if (!s.elements().empty() && s.elements().back() > limit) {
    throw std::domain_error(std::string(what) + " subset exceeds dimension " +
                            std::to_string(limit));
  }
}

}  // namespace detail

/// The rows of A selected by I, in order, all columns kept (the submatrix A_I
/// in minor notation, when A has |I| columns).
template <ScalarType T>
Matrix<T> row_minor(const Matrix<T>& a, const SubsetIndex& rows) {
  detail::check_subset_range(rows, a.rows(), "row");
  Matrix<T> m(rows.size(), a.cols());
  for (int i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      m(i, j) = a(rows.elements()[i] - 1, j);
    }
  }
  return m;
}

template <ScalarType T>
Matrix<T> submatrix(const Matrix<T>& a, const SubsetIndex& rows,
                    const SubsetIndex& cols) {
  detail::check_subset_range(rows, a.rows(), "row");
  detail::check_subset_range(cols, a.cols(), "column");
  Matrix<T> m(rows.size(), cols.size());
  for (int i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < cols.size(); ++j) {
      m(i, j) = a(rows.elements()[i] - 1, cols.elements()[j] - 1);
    }
  }
  return m;
}

/// det of the |I| x |J| submatrix with rows I and columns J taken in order.
template <ScalarType T>
T minor_det(const Matrix<T>& a, const SubsetIndex& rows,
            const SubsetIndex& cols) {
  if (rows.size() != cols.size()) {
    throw std::domain_error("minor_det requires |I| = |J|");
  }
  return determinant(submatrix(a, rows, cols));
}

/// Exact rank by rational row elimination.
inline int rank_of(const Matrix<Rational>& a) {
  Matrix<Rational> m = a;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) {
      for (int j = c; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    }
    for (int i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(r, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Float rank: diagonal-pivoted elimination on the Gram matrix, counting
/// pivots above max(n,k) * 2^-52 * (largest pivot).
inline int rank_of(const Matrix<double>& a) {
  const int k = a.cols();
  Matrix<double> g = gram(a).matrix();
  const double rel = std::max(a.rows(), a.cols()) * std::ldexp(1.0, -52);

  double largest = 0.0;
  int r = 0;
  for (int step = 0; step < k; ++step) {
    int p = step;
    for (int j = step + 1; j < k; ++j) {
      if (g(j, j) > g(p, p)) p = j;
    }
    const double d = g(p, p);
    if (step == 0) largest = d;
    if (!(d > rel * largest) || !(d > 0.0)) break;
    if (p != step) {
      for (int j = 0; j < k; ++j) std::swap(g(step, j), g(p, j));
      for (int i = 0; i < k; ++i) std::swap(g(i, step), g(i, p));
    }
    for (int i = step + 1; i < k; ++i) {
      for (int j = step + 1; j < k; ++j) {
        g(i, j) -= g(i, step) * g(step, j) / d;
      }
    }
    ++r;
  }
  return r;
}

}  // namespace kvol
