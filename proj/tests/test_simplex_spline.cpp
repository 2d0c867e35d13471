#include "doctest.h"

#include "ps12/simplex_spline.hpp"

#include <cmath>
#include <random>

using namespace ps12;

namespace
{
const MacroTriangle unit_tri({0, 0}, {1, 0}, {0, 1});

Point random_inside(const MacroTriangle& t, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(rng), b = u(rng);
  if (a + b > 1) {
    a = 1 - a;
    b = 1 - b;
  }
  return t.from_barycentric({{1 - a - b, a, b}});
}

SimplexSpline spline(const MacroTriangle& t, const char* label, double alpha = 1)
{
  return SimplexSpline(build_sites(t), MultiplicityVector::parse(label), alpha);
}
} // namespace

TEST_CASE("linear simplex spline")
{
  // Knots v1, v1, v2, v3: M = beta_1 / (integral of beta_1) = 6 beta_1 here.
  const auto m = spline(unit_tri, "211000");
  const Point center{1.0 / 3, 1.0 / 3};
  CHECK(eval_M(m, center) == doctest::Approx(2.0));
  CHECK(eval_M(m, {0.2, 0.3}) == doctest::Approx(6 * 0.5));

  // Scaled by area / 3 it is beta_1 itself.
  const auto b1 = m.with_alpha(unit_tri.area() / 3);
  CHECK(eval_M(b1, center) == doctest::Approx(1.0 / 3));
  CHECK(eval_M(b1, {0, 0}) == doctest::Approx(1.0));
  CHECK(eval_deriv(b1, {1, 0}, {0.2, 0.3}) == doctest::Approx(-1.0));
  CHECK(eval_deriv(b1, {0, 0}, {0.2, 0.3}) == doctest::Approx(0.0));
}

TEST_CASE("support and nonnegativity")
{
  const auto corner = spline(unit_tri, "600101");
  // Medial triangle lies outside conv{v1, v4, v6}.
  CHECK(eval_M(corner, {0.3, 0.3}) == 0.0);
  CHECK(eval_M(corner, {0.1, 0.1}) > 0.0);

  std::mt19937_64 rng(5);
  for (const char* label : {"600101", "220211", "121211", "141110", "422000"}) {
    const auto s = spline(unit_tri, label);
    for (int i = 0; i < 300; ++i)
      CHECK(eval_M(s, random_inside(unit_tri, rng)) >= -1e-12);
  }
}

TEST_CASE("degenerate knot sets are rejected")
{
  CHECK_THROWS_AS(spline(unit_tri, "440000"), std::invalid_argument);
  CHECK_THROWS_AS(spline(unit_tri, "305000"), std::invalid_argument);
  CHECK_THROWS_AS(spline(unit_tri, "110000"), std::invalid_argument);
  CHECK_THROWS_AS(spline(unit_tri, "211000", 0.0), std::invalid_argument);
}

TEST_CASE("pivot independence")
{
  std::mt19937_64 rng(17);
  const MacroTriangle t({0.1, -0.2}, {1.3, 0.2}, {0.4, 1.1});
  for (const char* label : {"600101", "320201", "220211", "121211", "221111",
                            "132110"}) {
    const auto s = spline(t, label);
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < 300; ++i) {
      const Point p = random_inside(t, rng);
      const double ref = eval_M(s, p, PivotRule::max_area);
      scale = std::max(scale, std::abs(ref));
      for (auto rule : {PivotRule::first_valid, PivotRule::last_valid})
        worst = std::max(worst, std::abs(eval_M(s, p, rule) - ref));
    }
    CHECK(worst <= 1e-10 * scale);
  }
}

TEST_CASE("derivatives match central differences")
{
  std::mt19937_64 rng(23);
  const MacroTriangle t({0, 0}, {1, 0}, {0.3, 0.9});
  for (const char* label : {"220211", "121211", "141110"}) {
    const auto s = spline(t, label);
    double scale = 0.0;
    for (int i = 0; i < 100; ++i)
      scale = std::max(scale, std::abs(eval_M(s, random_inside(t, rng))));
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
      const Point p = random_inside(t, rng);
      for (Point u : {Point{1, 0}, Point{0, 1}, Point{0.6, -0.8}}) {
        const double fd = (eval_M(s, p + h * u) - eval_M(s, p - h * u)) / (2 * h);
        CHECK(std::abs(eval_deriv(s, u, p) - fd) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("second derivatives match differences of first derivatives")
{
  std::mt19937_64 rng(29);
  const auto s = spline(unit_tri, "121211");
  const Point u{1, 0}, w{0.2, 1};
  const double h = 1e-5;
  for (int i = 0; i < 50; ++i) {
    const Point p = random_inside(unit_tri, rng);
    const std::array<Point, 2> dirs = {u, w};
    const double fd =
        (eval_deriv(s, w, p + h * u) - eval_deriv(s, w, p - h * u)) / (2 * h);
    CHECK(eval_derivs(s, dirs, p) == doctest::Approx(fd).epsilon(1e-5).scale(10));
  }
}

TEST_CASE("affine invariance")
{
  std::mt19937_64 rng(31);
  // A(x, y) = (2x + 0.5y + 1, -0.3x + 1.5y - 2)
  auto A = [](Point p) {
    return Point{2 * p.x + 0.5 * p.y + 1, -0.3 * p.x + 1.5 * p.y - 2};
  };
  const double det = 2 * 1.5 + 0.5 * 0.3;
  const MacroTriangle mapped(A({0, 0}), A({1, 0}), A({0, 1}));
  for (const char* label : {"600101", "131210", "221210"}) {
    const auto s = spline(unit_tri, label);
    const auto sa = spline(mapped, label);
    for (int i = 0; i < 100; ++i) {
      const Point p = random_inside(unit_tri, rng);
      CHECK(eval_M(sa, A(p)) == doctest::Approx(eval_M(s, p) / det).epsilon(1e-10));
    }
  }
}

TEST_CASE("univariate B-splines")
{
  const std::array<double, 7> left = {0, 0, 0, 0, 0, 0, 0.5};
  CHECK(univariate_bspline(left, 0.0) == doctest::Approx(1.0));
  CHECK(univariate_bspline(left, -0.1) == 0.0);
  CHECK(univariate_bspline(left, 0.5) == 0.0);
  CHECK(univariate_bspline(left, 0.7) == 0.0);

  // Knots {0^5, 1^2}: the Bernstein polynomial 5 t (1-t)^4.
  const std::array<double, 7> bern = {0, 0, 0, 0, 0, 1, 1};
  for (double t : {0.1, 0.25, 0.5, 0.9})
    CHECK(univariate_bspline(bern, t) ==
          doctest::Approx(5 * t * std::pow(1 - t, 4)));

  const std::array<double, 3> flat = {1, 1, 1};
  CHECK_THROWS_AS(univariate_bspline(flat, 1.0), std::invalid_argument);
}

TEST_CASE("edge restrictions")
{
  const auto inner = spline(unit_tri, "220211");
  const auto r = restrict_to_edge(inner, 0, 1);
  for (int i = 0; i <= 100; ++i)
    CHECK(std::abs(r(i / 100.0)) <= 1e-12);

  // 600101 on [v1, v2] is proportional to the B-spline on {0^6, 1/2}.
  const auto corner = spline(unit_tri, "600101");
  const auto e12 = restrict_to_edge(corner, 0, 1);
  const std::array<double, 7> knots = {0, 0, 0, 0, 0, 0, 0.5};
  const double ratio = e12(0.0) / univariate_bspline(knots, 0.0);
  CHECK(ratio > 0);
  for (int i = 0; i < 100; ++i) {
    const double t = (i + 0.5) / 100;
    CHECK(e12(t) == doctest::Approx(ratio * univariate_bspline(knots, t))
                        .epsilon(1e-10)
                        .scale(ratio));
  }
  const auto e23 = restrict_to_edge(corner, 1, 2);
  for (int i = 0; i <= 100; ++i)
    CHECK(e23(i / 100.0) == 0.0);

  CHECK_THROWS_AS(restrict_to_edge(corner, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(restrict_to_edge(corner, 0, 3), std::invalid_argument);
}

TEST_CASE("moment oracle")
{
  const MacroTriangle t({0.2, 0.1}, {1.4, 0.3}, {0.5, 1.2});
  const auto corner = spline(t, "600101");

  auto [l1, r1] = moment_oracle(corner, {{0, 0, 1.0}}, 8);
  CHECK(l1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r1 == doctest::Approx(1.0).epsilon(1e-14));

  // First moment: the mean of the 8 knots.
  Point mean{};
  for (Point k : corner.knot_points())
    mean += k / 8.0;
  auto [lx, rx] = moment_oracle(corner, {{1, 0, 1.0}}, 8);
  CHECK(rx == doctest::Approx(mean.x).epsilon(1e-14));
  CHECK(std::abs(lx - mean.x) <= 1e-8);

  auto [lq, rq] = moment_oracle(spline(t, "121211"), {{2, 0, 1.0}}, 32);
  CHECK(std::abs(lq - rq) <= 1e-8);

  CHECK_THROWS_AS(moment_oracle(corner, {{4, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(moment_oracle(corner.with_alpha(2.0), {{0, 0, 1.0}}),
                  std::invalid_argument);
}
