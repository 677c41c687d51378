#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kvol/content.hpp"
#include "kvol/matrix.hpp"

namespace kvol {

/// Parallelepiped spanned by the columns of a matrix (span coefficients in
/// [0,1] are implicit).
template <ScalarType T>
struct Parallelepiped {
  Matrix<T> spanning;  // n x k, k <= n

  explicit Parallelepiped(Matrix<T> columns) : spanning(std::move(columns)) {
    if (spanning.cols() > spanning.rows()) {
      throw std::domain_error("parallelepiped needs k <= n spanning vectors");
    }
  }
};

template <ScalarType T>
ContentReport<T> parallelepiped_content(const Parallelepiped<T>& p) {
  return pythagorean_check(p.spanning);
}

/// Simplex with k+1 vertices in R^n, stored as the rows of a matrix.
template <ScalarType T>
struct Simplex {
  Matrix<T> vertices;  // (k+1) x n

  explicit Simplex(Matrix<T> verts) : vertices(std::move(verts)) {
    if (vertices.rows() < 1) {
      throw std::domain_error("simplex needs at least one vertex");
    }
    if (vertices.rows() > vertices.cols() + 1) {
      throw std::domain_error("simplex needs k+1 <= n+1 vertices");
    }
  }

  int dim() const { return vertices.rows() - 1; }

  /// Edge vectors v_i - v_0 as columns of an n x k matrix.
  Matrix<T> edge_matrix() const {
    const int k = dim();
    const int n = vertices.cols();
    Matrix<T> e(n, k);
    for (int i = 0; i < k; ++i) {
      for (int c = 0; c < n; ++c) {
        e(c, i) = vertices(i + 1, c) - vertices(0, c);
      }
    }
    return e;
  }
};

/// Squared simplex content over (k!)^2, exact in exact mode. The squared
/// edge-parallelepiped content is accumulated as the sum of squared row
/// minors: all terms are nonnegative, so skewed simplices do not lose the
/// result to cancellation the way det(E^t E) does.
template <ScalarType T>
T simplex_content_sq(const Simplex<T>& s) {
  const Matrix<T> edges = s.edge_matrix();
  T sq(0);
  for (const auto& rows : k_subsets(edges.rows(), edges.cols())) {
    const T m = determinant(row_minor(edges, rows));
    sq += m * m;
  }
  T kfact(1);
  for (int i = 2; i <= s.dim(); ++i) kfact *= T(i);
  return sq / (kfact * kfact);
}

/// Content of the edge parallelepiped divided by k!.
template <ScalarType T>
double simplex_content(const Simplex<T>& s) {
  const double sq = to_double(simplex_content_sq(s));
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

/// Squared leg-face areas vs. squared hypotenuse-face area of the right
/// tetrahedron with legs a, b, c, each side computed from simplex contents
/// rather than the closed form. Exact inputs give an exactly zero residual.
template <ScalarType T>
struct DeGuaReport {
  T leg_sq_sum{};
  T hyp_sq{};
  double relative_residual = 0.0;
};

template <ScalarType T>
DeGuaReport<T> de_gua_check(const T& a, const T& b, const T& c) {
  if (!(a > T(0)) || !(b > T(0)) || !(c > T(0))) {
    throw std::domain_error("de_gua_check requires positive leg lengths");
  }
  const T zero(0);
  auto triangle = [&](const std::vector<T>& v1, const std::vector<T>& v2) {
    Matrix<T> verts(3, 3);
    for (int j = 0; j < 3; ++j) {
      verts(1, j) = v1[static_cast<std::size_t>(j)];
      verts(2, j) = v2[static_cast<std::size_t>(j)];
    }
    return Simplex<T>(std::move(verts));
  };
  auto hyp_triangle = [&](const std::vector<T>& v0, const std::vector<T>& v1,
                          const std::vector<T>& v2) {
    Matrix<T> verts(3, 3);
    for (int j = 0; j < 3; ++j) {
      verts(0, j) = v0[static_cast<std::size_t>(j)];
      verts(1, j) = v1[static_cast<std::size_t>(j)];
      verts(2, j) = v2[static_cast<std::size_t>(j)];
    }
    return Simplex<T>(std::move(verts));
  };

  const std::vector<T> ea{a, zero, zero};
  const std::vector<T> eb{zero, b, zero};
  const std::vector<T> ec{zero, zero, c};

  DeGuaReport<T> report;
  if constexpr (std::same_as<T, Rational>) {
    report.leg_sq_sum = simplex_content_sq(triangle(ea, eb)) +
                        simplex_content_sq(triangle(ea, ec)) +
                        simplex_content_sq(triangle(eb, ec));
    report.hyp_sq = simplex_content_sq(hyp_triangle(ea, eb, ec));
  } else {
    auto area = [](const Simplex<double>& s) { return simplex_content(s); };
    const double l1 = area(triangle(ea, eb));
    const double l2 = area(triangle(ea, ec));
    const double l3 = area(triangle(eb, ec));
    report.leg_sq_sum = l1 * l1 + l2 * l2 + l3 * l3;
    const double h = area(hyp_triangle(ea, eb, ec));
    report.hyp_sq = h * h;
  }
  const double diff =
      std::fabs(to_double(report.leg_sq_sum) - to_double(report.hyp_sq));
  report.relative_residual = diff / to_double(report.hyp_sq);
  return report;
}

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// A parametrized immersion given by its Jacobian: an n x k matrix of
/// partials at each parameter point, integrated as sqrt(det g) over a
/// rectangular domain by the composite midpoint rule.
struct ImmersionSpec {
  int param_dim = 0;
  int ambient_dim = 0;
  std::vector<Interval> domain;                               // size k
  std::function<Matrix<double>(std::span<const double>)> jacobian;
  std::vector<int> resolution;                                // per axis
};

double immersion_content(const ImmersionSpec& spec);

/// Central-difference Jacobian for maps only available as samples, with the
/// standard cube-root-of-epsilon step per axis.
std::function<Matrix<double>(std::span<const double>)>
central_difference_jacobian(
    std::function<std::vector<double>(std::span<const double>)> position,
    int param_dim, int ambient_dim);

/// A catalog shape: immersion plus the analytic content when one is known.
struct Shape {
  std::string name;
  ImmersionSpec spec;
  std::optional<double> closed_form;
};

/// Parses "name(param=value,...)" shape strings, e.g. "sphere(r=2)" or
/// "helix(r=1,pitch=0.5,turns=3)". Throws std::invalid_argument on unknown
/// names or parameters.
Shape make_shape(const std::string& spec_string);

std::vector<std::string> shape_catalog();

}  // namespace kvol
