#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kvol/matrix.hpp"
#include "kvol/subsets.hpp"

namespace kvol {

/// Both sides of det(A^t A) = sum_I det(A_I)^2 with the per-subset minors
/// and the residual between them. In exact mode the residual is exactly 0.
template <ScalarType T>
struct ContentReport {
  T gram_det{};
  T minor_sq_sum{};
  std::vector<std::pair<SubsetIndex, T>> minors;  // signed, lex order
  T residual{};                                   // gram_det - minor_sq_sum
  double content = 0.0;                           // sqrt(gram_det)
};

/// Evaluates the identity by two independent routes: det(A^t A) through
/// elimination, and the sum of squared k x k row minors by enumeration.
template <ScalarType T>
ContentReport<T> pythagorean_check(const Matrix<T>& a) {
  const int n = a.rows();
  const int k = a.cols();
  if (k > n) {
    throw std::domain_error(
        "pythagorean_check requires k <= n: an n x k matrix with k > n has "
        "no k-subsets of rows");
  }

  ContentReport<T> report;
  report.gram_det = determinant(gram(a).matrix());

  T sum(0);
  for (const auto& I : k_subsets(n, k)) {
    T m = determinant(row_minor(a, I));
    sum += m * m;
    report.minors.emplace_back(I, std::move(m));
  }
  report.minor_sq_sum = std::move(sum);
  report.residual = report.gram_det - report.minor_sq_sum;

  const double g = to_double(report.gram_det);
  report.content = g > 0.0 ? std::sqrt(g) : 0.0;
  return report;
}

/// Per-subset signed minor det(A_I) and its absolute value, the content of
/// the projection onto the coordinate hyperplane indexed by I.
template <ScalarType T>
struct ProjectionEntry {
  SubsetIndex subset;
  T minor;
  T abs_content;
};

template <ScalarType T>
std::vector<ProjectionEntry<T>> projection_contents(const Matrix<T>& a) {
  if (a.cols() > a.rows()) {
    throw std::domain_error("projection_contents requires k <= n");
  }
  std::vector<ProjectionEntry<T>> out;
  for (const auto& I : k_subsets(a.rows(), a.cols())) {
    T m = determinant(row_minor(a, I));
    T abs = scalar_abs(m);
    out.push_back(ProjectionEntry<T>{I, std::move(m), std::move(abs)});
  }
  return out;
}

/// Rank-general content of a linear map: the restriction to ker(A)^perp ->
/// im(A) has content equal to the product of the nonzero singular values.
/// With r = rank(A) that product squared is the sum of the squares of all
/// r x r minors (the r-th elementary symmetric function of the Gram
/// spectrum), which stays inside exact arithmetic.
template <ScalarType T>
struct ContentResult {
  double content = 0.0;
  T content_sq{};
  int rank = 0;
  bool degenerate_rank_zero = false;  // zero map: empty-product content 1
};

template <ScalarType T>
ContentResult<T> content(const Matrix<T>& a) {
  ContentResult<T> out;
  out.rank = rank_of(a);
  out.degenerate_rank_zero = out.rank == 0;

  if (out.rank == a.cols()) {
    out.content_sq = determinant(gram(a).matrix());
  } else if (out.rank == a.rows()) {
    out.content_sq = determinant(gram(transpose(a)).matrix());
  } else {
    T sum(0);
    for (const auto& I : k_subsets(a.rows(), out.rank)) {
      for (const auto& J : k_subsets(a.cols(), out.rank)) {
        const T m = minor_det(a, I, J);
        sum += m * m;
      }
    }
    out.content_sq = std::move(sum);
  }

  const double sq = to_double(out.content_sq);
  out.content = sq > 0.0 ? std::sqrt(sq) : 0.0;
  return out;
}

struct MultiplicativityReport {
  double composed_content = 0.0;    // c(M o L) with M = E L^t
  double product_of_contents = 0.0; // c(M) c(L)
  double relative_gap = 0.0;
};

/// Checks c(M o L) = c(M) c(L) on the one family where the hypothesis
/// im(L) = ker(M)^perp holds by construction: M = E L^t with E injective.
template <ScalarType T>
MultiplicativityReport multiplicativity_check(const Matrix<T>& l,
                                              const Matrix<T>& e) {
  if (l.cols() != e.cols()) {
    throw std::domain_error(
        "multiplicativity_check: L and E must have the same column count");
  }
  if (rank_of(l) != l.cols()) {
    throw std::domain_error(
        "multiplicativity hypothesis not satisfied: L is column-rank "
        "deficient");
  }
  if (rank_of(e) != e.cols()) {
    throw std::domain_error(
        "multiplicativity hypothesis not satisfied: E is column-rank "
        "deficient");
  }

  const Matrix<T> m = mat_mul(e, transpose(l));
  const Matrix<T> ml = mat_mul(m, l);

  MultiplicativityReport report;
  report.composed_content = content(ml).content;
  report.product_of_contents = content(m).content * content(l).content;
  const double denom =
      std::max(report.composed_content, report.product_of_contents);
  report.relative_gap =
      denom > 0.0
          ? std::fabs(report.composed_content - report.product_of_contents) /
                denom
          : 0.0;
  return report;
}

struct AdjointContents {
  double content = 0.0;
  double adjoint_content = 0.0;
};

/// c(A) and c(A^t), each via the rank-general definition.
template <ScalarType T>
AdjointContents adjoint_content_check(const Matrix<T>& a) {
  return AdjointContents{content(a).content, content(transpose(a)).content};
}

}  // namespace kvol
