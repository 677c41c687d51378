#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kvol/matrix.hpp"
#include "kvol/subsets.hpp"

namespace kvol {

/// Grade-i element of the exterior power of R^n: one coordinate per
/// k-subset of {1..n}, stored in lexicographic rank order. The basis
/// elements e_I are declared orthonormal.
template <ScalarType T>
class Multivector {
 public:
  Multivector(int grade, int ambient)
      : grade_(grade), ambient_(ambient),
        coords_(checked_dim(ambient, grade), T(0)) {}

  Multivector(int grade, int ambient, std::vector<T> coords)
      : grade_(grade), ambient_(ambient), coords_(std::move(coords)) {
    if (coords_.size() != checked_dim(ambient, grade)) {
      throw std::domain_error("multivector coordinate count must be C(n,i)");
    }
    for (const T& x : coords_) require_finite(x);
  }

  /// The basis element e_I.
  static Multivector basis(const SubsetIndex& I) {
    Multivector m(I.size(), I.ambient());
    m.coords_[static_cast<std::size_t>(I.rank())] = T(1);
    return m;
  }

  int grade() const { return grade_; }
  int ambient() const { return ambient_; }
  const std::vector<T>& coords() const { return coords_; }

  const T& coeff(const SubsetIndex& I) const {
    if (I.ambient() != ambient_ || I.size() != grade_) {
      throw std::domain_error("subset does not index this multivector");
    }
    return coords_[static_cast<std::size_t>(I.rank())];
  }

  bool operator==(const Multivector& other) const = default;

 private:
  static std::size_t checked_dim(int ambient, int grade) {
    if (grade < 0 || grade > ambient) {
      throw std::domain_error("multivector grade out of range");
    }
    return static_cast<std::size_t>(binomial_u64(ambient, grade));
  }

  int grade_ = 0;
  int ambient_ = 0;
  std::vector<T> coords_;
};

/// The i-th compound matrix of an n x k base matrix: the C(n,i) x C(k,i)
/// matrix whose (I,J) entry is the minor det of rows I and columns J. It
/// represents the induced map on grade-i exterior powers.
template <ScalarType T>
struct CompoundMatrix {
  int base_rows = 0;
  int base_cols = 0;
  int grade = 0;
  Matrix<T> entries;
};

template <ScalarType T>
CompoundMatrix<T> compound(const Matrix<T>& a, int grade) {
  if (grade < 0 || grade > a.rows() || grade > a.cols()) {
    throw std::domain_error("compound grade must satisfy 0 <= i <= min(n,k)");
  }
  const auto row_sets = k_subsets(a.rows(), grade);
  const auto col_sets = k_subsets(a.cols(), grade);
  Matrix<T> m(static_cast<int>(row_sets.size()),
              static_cast<int>(col_sets.size()));
  for (std::size_t i = 0; i < row_sets.size(); ++i) {
    for (std::size_t j = 0; j < col_sets.size(); ++j) {
      m(static_cast<int>(i), static_cast<int>(j)) =
          minor_det(a, row_sets[i], col_sets[j]);
    }
  }
  return CompoundMatrix<T>{a.rows(), a.cols(), grade, std::move(m)};
}

/// Wedge of the columns of A: the grade-k multivector whose I-coordinate is
/// det(A_I). For k = n this is det(A) times the top basis element.
template <ScalarType T>
Multivector<T> wedge(const Matrix<T>& columns) {
  const int n = columns.rows();
  const int k = columns.cols();
  if (k > n) {
    throw std::domain_error("wedge of k vectors requires k <= n");
  }
  const auto sets = k_subsets(n, k);
  std::vector<T> coords;
  coords.reserve(sets.size());
  for (const auto& I : sets) {
    coords.push_back(determinant(row_minor(columns, I)));
  }
  return Multivector<T>(k, n, std::move(coords));
}

template <ScalarType T>
Multivector<T> wedge(const std::vector<std::vector<T>>& vectors) {
  return wedge(Matrix<T>::from_columns(vectors));
}

/// Coordinate image of a multivector under a compound matrix.
template <ScalarType T>
Multivector<T> apply(const CompoundMatrix<T>& c, const Multivector<T>& x) {
  if (x.grade() != c.grade || x.ambient() != c.base_cols) {
    throw std::domain_error("compound/multivector grade or ambient mismatch");
  }
  std::vector<T> out(static_cast<std::size_t>(c.entries.rows()), T(0));
  for (int i = 0; i < c.entries.rows(); ++i) {
    T acc(0);
    for (int j = 0; j < c.entries.cols(); ++j) {
      acc += c.entries(i, j) * x.coords()[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return Multivector<T>(c.grade, c.base_rows, std::move(out));
}

/// Inner product induced by declaring the e_I orthonormal.
template <ScalarType T>
T mv_inner(const Multivector<T>& x, const Multivector<T>& y) {
  if (x.grade() != y.grade() || x.ambient() != y.ambient()) {
    throw std::domain_error("inner product requires equal grade and ambient");
  }
  T acc(0);
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    acc += x.coords()[i] * y.coords()[i];
  }
  return acc;
}

}  // namespace kvol
