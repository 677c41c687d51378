#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kvol/geometry.hpp"
#include "test_helpers.hpp"

using namespace kvol;
using helpers::exact_from_ints;
using helpers::float_from;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("parallelepiped content") {
  SUBCASE("unit square embedded in R^3") {
    const Parallelepiped<Rational> p(exact_from_ints({{1, 0}, {0, 1}, {0, 0}}));
    CHECK(parallelepiped_content(p).content == 1.0);
  }
  SUBCASE("the 3x2 example has content sqrt(54)") {
    const Parallelepiped<Rational> p(exact_from_ints({{1, 4}, {2, 5}, {3, 6}}));
    const auto report = parallelepiped_content(p);
    CHECK(report.gram_det == 54);
    CHECK(report.content == doctest::Approx(std::sqrt(54.0)).epsilon(1e-15));
  }
  SUBCASE("a single vector is the classical theorem") {
    const Parallelepiped<Rational> p(exact_from_ints({{3}, {4}}));
    const auto report = parallelepiped_content(p);
    CHECK(report.content == doctest::Approx(5.0).epsilon(1e-15));
    REQUIRE(report.minors.size() == 2);
    CHECK(report.minors[0].second == 3);
    CHECK(report.minors[1].second == 4);
  }
  SUBCASE("too many spanning vectors") {
    CHECK_THROWS_AS(Parallelepiped<Rational>(exact_from_ints({{1, 2, 3}})),
                    std::domain_error);
  }
}

TEST_CASE("simplex content") {
  SUBCASE("unit right triangle") {
    const Simplex<Rational> t(exact_from_ints({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(simplex_content_sq(t) == Rational(1, 4));
    CHECK(simplex_content(t) == 0.5);
  }
  SUBCASE("unit right tetrahedron has volume 1/6") {
    const Simplex<Rational> t(
        exact_from_ints({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(simplex_content_sq(t) == Rational(1, 36));
    CHECK(simplex_content(t) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  }
  SUBCASE("hypotenuse face area of the right tetrahedron") {
    helpers::Rng rng(5);
    std::uniform_real_distribution<double> dist(0.2, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
      const double a = dist(rng), b = dist(rng), c = dist(rng);
      const Simplex<double> hyp(
          float_from({{a, 0, 0}, {0, b, 0}, {0, 0, c}}));
      const double expected =
          0.5 * std::sqrt(a * a * b * b + a * a * c * c + b * b * c * c);
      CHECK(simplex_content(hyp) ==
            doctest::Approx(expected).epsilon(1e-13));
    }
  }
  SUBCASE("invariant under vertex relabeling and translation") {
    const auto verts = exact_from_ints({{0, 1, 2}, {3, 1, 0}, {2, 2, 2}});
    const Simplex<Rational> s(verts);
    const auto base = simplex_content_sq(s);

    const Simplex<Rational> relabeled(
        exact_from_ints({{2, 2, 2}, {0, 1, 2}, {3, 1, 0}}));
    CHECK(simplex_content_sq(relabeled) == base);

    auto shifted = verts;
    for (int i = 0; i < 3; ++i) {
      shifted(i, 0) += 5;
      shifted(i, 1) -= 7;
      shifted(i, 2) += 2;
    }
    CHECK(simplex_content_sq(Simplex<Rational>(shifted)) == base);
  }
  SUBCASE("a single vertex is a 0-simplex of content 1") {
    const Simplex<Rational> point(exact_from_ints({{4, 5}}));
    CHECK(simplex_content_sq(point) == 1);
  }
  SUBCASE("vertex count beyond n+1 is rejected") {
    CHECK_THROWS_AS(
        Simplex<Rational>(exact_from_ints({{0}, {1}, {2}})),
        std::domain_error);
  }
}

TEST_CASE("de Gua identity") {
  SUBCASE("exact unit legs print 3/4 on both sides") {
    const auto report =
        de_gua_check(Rational(1), Rational(1), Rational(1));
    CHECK(report.leg_sq_sum == Rational(3, 4));
    CHECK(report.hyp_sq == Rational(3, 4));
    CHECK(report.relative_residual == 0.0);
  }
  SUBCASE("closed-form oracle at (3,4,5)") {
    const auto report = de_gua_check(3.0, 4.0, 5.0);
    CHECK(report.leg_sq_sum == doctest::Approx(192.25).epsilon(1e-14));
    CHECK(report.hyp_sq == doctest::Approx(192.25).epsilon(1e-14));
    CHECK(report.relative_residual <= 1e-12);
  }
  SUBCASE("symmetric in the legs") {
    const auto r1 = de_gua_check(2.0, 7.0, 11.0);
    const auto r2 = de_gua_check(7.0, 2.0, 11.0);
    CHECK(r1.leg_sq_sum == r2.leg_sq_sum);
    CHECK(r1.hyp_sq == r2.hyp_sq);
  }
  SUBCASE("log-spaced grid keeps the relative residual below 1e-12") {
    const double grid[] = {1e-3, 1.0, 1e3};
    for (double a : grid) {
      for (double b : grid) {
        for (double c : grid) {
          CHECK(de_gua_check(a, b, c).relative_residual <= 1e-12);
        }
      }
    }
  }
  SUBCASE("non-positive legs are rejected") {
    CHECK_THROWS_AS(de_gua_check(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(de_gua_check(1.0, -2.0, 1.0), std::domain_error);
  }
}

TEST_CASE("immersion quadrature") {
  SUBCASE("flat patch is exact at any resolution") {
    for (int res : {1, 3, 10}) {
      auto shape = make_shape("patch()");
      shape.spec.resolution = {res, res};
      CHECK(immersion_content(shape.spec) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  SUBCASE("unit circle arc length; constant integrand, so near machine") {
    auto shape = make_shape("circle(r=1)");
    shape.spec.resolution = {10000};
    const double len = immersion_content(shape.spec);
    CHECK(std::fabs(len - 2.0 * kPi) <= 1e-12 * 2.0 * kPi);
  }
  SUBCASE("sphere area converges to 4 pi r^2") {
    auto shape = make_shape("sphere(r=1)");
    shape.spec.resolution = {128, 128};
    const double area = immersion_content(shape.spec);
    CHECK(std::fabs(area - 4.0 * kPi) <= 1e-3 * 4.0 * kPi);
  }
  SUBCASE("constant-Jacobian map equals parallelepiped content x measure") {
    const auto columns = float_from({{1, 0.5}, {0, 2}, {1, -1}});
    const double expected =
        parallelepiped_content(Parallelepiped<double>(columns)).content *
        (2.0 * 3.0);
    for (int res : {1, 2, 7}) {
      ImmersionSpec spec{2,
                         3,
                         {{0.0, 2.0}, {0.0, 3.0}},
                         [&](std::span<const double>) { return columns; },
                         {res, res}};
      CHECK(immersion_content(spec) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("central-difference Jacobian tracks the analytic one") {
    auto position = [](std::span<const double> p) {
      const double th = p[0], ph = p[1];
      return std::vector<double>{std::sin(th) * std::cos(ph),
                                 std::sin(th) * std::sin(ph), std::cos(th)};
    };
    ImmersionSpec spec{2,
                       3,
                       {{0.0, kPi}, {0.0, 2.0 * kPi}},
                       central_difference_jacobian(position, 2, 3),
                       {64, 64}};
    auto analytic = make_shape("sphere(r=1)");
    analytic.spec.resolution = {64, 64};
    CHECK(immersion_content(spec) ==
          doctest::Approx(immersion_content(analytic.spec)).epsilon(1e-8));
  }
  SUBCASE("wrong Jacobian shape is a domain error") {
    ImmersionSpec spec{1,
                       2,
                       {{0.0, 1.0}},
                       [](std::span<const double>) {
                         return Matrix<double>(3, 1);
                       },
                       {4}};
    CHECK_THROWS_AS(immersion_content(spec), std::domain_error);
  }
  SUBCASE("resolution and interval validation") {
    auto shape = make_shape("circle()");
    shape.spec.resolution = {0};
    CHECK_THROWS_AS(immersion_content(shape.spec), std::domain_error);
    shape.spec.resolution = {4};
    shape.spec.domain = {{1.0, 1.0}};
    CHECK_THROWS_AS(immersion_content(shape.spec), std::domain_error);
  }
}

TEST_CASE("shape catalog") {
  SUBCASE("closed forms") {
    CHECK(*make_shape("segment(x=3,y=4)").closed_form == doctest::Approx(5.0));
    CHECK(*make_shape("circle(r=2)").closed_form ==
          doctest::Approx(4.0 * kPi));
    CHECK(*make_shape("helix(r=1,pitch=0.5,turns=3)").closed_form ==
          doctest::Approx(3.0 * 2.0 * kPi *
                          std::sqrt(1.0 + 0.25 / (4.0 * kPi * kPi))));
    CHECK(*make_shape("patch(w=2,h=3)").closed_form == doctest::Approx(6.0));
    CHECK(*make_shape("torus(R=3,r=1)").closed_form ==
          doctest::Approx(12.0 * kPi * kPi));
    CHECK_FALSE(make_shape("graph(a=2)").closed_form.has_value());
  }
  SUBCASE("quadrature agrees with the closed forms at moderate resolution") {
    for (const char* spec : {"segment(x=1,y=2,z=2)", "helix(r=2,pitch=1,turns=2)",
                             "torus(R=3,r=1)"}) {
      auto shape = make_shape(spec);
      shape.spec.resolution.assign(shape.spec.resolution.size(), 400);
      const double v = immersion_content(shape.spec);
      CHECK(std::fabs(v - *shape.closed_form) <=
            1e-4 * std::fabs(*shape.closed_form));
    }
  }
  SUBCASE("parse errors") {
    CHECK_THROWS_AS(make_shape("nosuch(r=1)"), std::invalid_argument);
    CHECK_THROWS_AS(make_shape("sphere(radius=1)"), std::invalid_argument);
    CHECK_THROWS_AS(make_shape("sphere(r=abc)"), std::invalid_argument);
    CHECK_THROWS_AS(make_shape("sphere(r=-1)"), std::invalid_argument);
    CHECK_THROWS_AS(make_shape("sphere(r=1"), std::invalid_argument);
  }
}
