#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kvol/matrix.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace kvol;
using helpers::exact_from_ints;
using helpers::float_from;

TEST_CASE("transpose") {
  const auto a = exact_from_ints({{1, 2}, {3, 4}, {5, 6}});
  const auto t = transpose(a);
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 3);
  CHECK(t == exact_from_ints({{1, 3, 5}, {2, 4, 6}}));

  const auto one = exact_from_ints({{7}});
  CHECK(transpose(one) == one);

  helpers::Rng rng(11);
  const auto r = helpers::random_exact_rational(rng, 6, 4);
  CHECK(transpose(transpose(r)) == r);
}

TEST_CASE("mat_mul") {
  const auto a = exact_from_ints({{1, 2}, {3, 4}});
  CHECK(mat_mul(a, Matrix<Rational>::identity(2)) == a);
  CHECK(mat_mul(a, exact_from_ints({{0, 1}, {1, 0}})) ==
        exact_from_ints({{2, 1}, {4, 3}}));

  SUBCASE("associativity over random exact chains") {
    helpers::Rng rng(22);
    const auto x = helpers::random_exact_rational(rng, 3, 4);
    const auto y = helpers::random_exact_rational(rng, 4, 2);
    const auto z = helpers::random_exact_rational(rng, 2, 5);
    CHECK(mat_mul(mat_mul(x, y), z) == mat_mul(x, mat_mul(y, z)));
  }

  CHECK_THROWS_AS(mat_mul(a, exact_from_ints({{1, 2, 3}})),
                  std::domain_error);
}

TEST_CASE("determinant conventions and small cases") {
  CHECK(determinant(Matrix<Rational>(0, 0)) == 1);
  CHECK(determinant(Matrix<double>(0, 0)) == 1.0);
  CHECK(determinant(exact_from_ints({{1, 2}, {3, 4}})) == -2);
  CHECK_THROWS_AS(determinant(exact_from_ints({{1, 2, 3}, {4, 5, 6}})),
                  std::domain_error);
}

TEST_CASE("Bareiss determinant equals cofactor expansion") {
  helpers::Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const auto a = helpers::random_exact(rng, n, n);
    CHECK(determinant(a) == oracles::det_cofactor(a));
  }
  SUBCASE("with rational entries needing denominator clearing") {
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 4);
      const auto a = helpers::random_exact_rational(rng, n, n);
      CHECK(determinant(a) == oracles::det_cofactor(a));
    }
  }
  SUBCASE("singular matrices hit the zero-pivot path") {
    auto a = helpers::random_exact(rng, 4, 4);
    for (int j = 0; j < 4; ++j) a(2, j) = a(0, j);  // duplicate row
    CHECK(determinant(a) == 0);
    auto b = helpers::random_exact(rng, 4, 4);
    for (int i = 0; i < 4; ++i) b(i, 0) = 0;       // zero leading column
    CHECK(determinant(b) == oracles::det_cofactor(b));
  }
}

TEST_CASE("float determinant tracks the cofactor oracle") {
  helpers::Rng rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto a = helpers::random_float(rng, n, n);
    const double expected = oracles::det_cofactor(a);
    CHECK(std::fabs(determinant(a) - expected) <=
          1e-10 * std::max(1.0, std::fabs(expected)));
  }
  SUBCASE("tiny pivots are structural zeros") {
    auto a = float_from({{1e-320, 0.0}, {0.0, 1e-320}});
    CHECK(determinant(a) == 0.0);
  }
}

TEST_CASE("exact determinant is multiplicative and transpose-invariant") {
  helpers::Rng rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto a = helpers::random_exact(rng, n, n, -5, 5);
    const auto b = helpers::random_exact(rng, n, n, -5, 5);
    CHECK(determinant(mat_mul(a, b)) == determinant(a) * determinant(b));
    CHECK(determinant(transpose(a)) == determinant(a));
  }
}

TEST_CASE("gram matrix") {
  const auto iso = exact_from_ints({{1, 0}, {0, 1}, {0, 0}});
  CHECK(gram(iso).matrix() == Matrix<Rational>::identity(2));

  const auto a = exact_from_ints({{1, 4}, {2, 5}, {3, 6}});
  CHECK(gram(a).matrix() == exact_from_ints({{14, 32}, {32, 77}}));

  SUBCASE("float gram is bit-symmetric by construction") {
    helpers::Rng rng(66);
    const auto f = helpers::random_float(rng, 7, 3);
    const auto g = gram(f).matrix();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(g(i, j) == g(j, i));
    }
  }

  SUBCASE("leading principal minors are nonnegative in exact mode") {
    helpers::Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 8);
      const int k = 1 + static_cast<int>(rng() % 4);
      const auto g = gram(helpers::random_exact(rng, n, k)).matrix();
      for (int lead = 1; lead <= g.rows(); ++lead) {
        std::vector<int> rows;
        for (int i = 1; i <= lead; ++i) rows.push_back(i);
        const SubsetIndex idx(rows, g.rows());
        CHECK(minor_det(g, idx, idx) >= 0);
      }
    }
  }
}

TEST_CASE("row minors and minor determinants") {
  // columns (a,b,c) = (1,2,3) and (d,e,f) = (4,5,6)
  const auto a = exact_from_ints({{1, 4}, {2, 5}, {3, 6}});
  const auto all_cols = SubsetIndex({1, 2}, 2);
  CHECK(minor_det(a, SubsetIndex({1, 2}, 3), all_cols) == -3);
  CHECK(minor_det(a, SubsetIndex({1, 3}, 3), all_cols) == -6);
  CHECK(minor_det(a, SubsetIndex({2, 3}, 3), all_cols) == -3);

  const auto iso = exact_from_ints({{1, 0}, {0, 1}, {0, 0}});
  CHECK(minor_det(iso, SubsetIndex({1, 2}, 3), all_cols) == 1);
  CHECK(minor_det(iso, SubsetIndex({1, 3}, 3), all_cols) == 0);
  CHECK(minor_det(iso, SubsetIndex({2, 3}, 3), all_cols) == 0);

  CHECK(row_minor(a, SubsetIndex({1, 3}, 3)) ==
        exact_from_ints({{1, 4}, {3, 6}}));

  CHECK_THROWS_AS(minor_det(a, SubsetIndex({1, 2}, 3), SubsetIndex({1}, 2)),
                  std::domain_error);
  CHECK_THROWS_AS(row_minor(a, SubsetIndex({1, 4}, 4)), std::domain_error);
}

TEST_CASE("the symbolic 3x2 minor set at random instantiations") {
  helpers::Rng rng(88);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = helpers::random_exact_rational(rng, 3, 2);
    const Rational a = m(0, 0), d = m(0, 1);
    const Rational b = m(1, 0), e = m(1, 1);
    const Rational c = m(2, 0), f = m(2, 1);
    const auto cols = SubsetIndex({1, 2}, 2);
    CHECK(minor_det(m, SubsetIndex({1, 2}, 3), cols) == a * e - b * d);
    CHECK(minor_det(m, SubsetIndex({1, 3}, 3), cols) == a * f - c * d);
    CHECK(minor_det(m, SubsetIndex({2, 3}, 3), cols) == b * f - c * e);
  }
}

TEST_CASE("rank") {
  CHECK(rank_of(exact_from_ints({{1, 2}, {2, 4}, {3, 6}})) == 1);
  CHECK(rank_of(exact_from_ints({{1, 4}, {2, 5}, {3, 6}})) == 2);
  CHECK(rank_of(Matrix<Rational>(3, 2)) == 0);

  CHECK(rank_of(float_from({{1, 2}, {2, 4}, {3, 6}})) == 1);
  CHECK(rank_of(float_from({{1, 4}, {2, 5}, {3, 6}})) == 2);
  CHECK(rank_of(Matrix<double>(3, 2)) == 0);

  SUBCASE("float rank matches construction on random low-rank products") {
    helpers::Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 4);
      const int k = 3 + static_cast<int>(rng() % 3);
      const int r = 1 + static_cast<int>(rng() % (std::min(n, k) - 1));
      const auto left = helpers::random_float(rng, n, r);
      const auto right = helpers::random_float(rng, r, k);
      CHECK(rank_of(mat_mul(left, right)) == r);
    }
  }
}

TEST_CASE("non-finite float entries are rejected") {
  CHECK_THROWS_AS(float_from({{1.0, std::nan("")}}), std::domain_error);
  CHECK_THROWS_AS(
      float_from({{std::numeric_limits<double>::infinity()}}),
      std::domain_error);
}
