#include "doctest.h"

#include "ps12/interpolation.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace ps12;

namespace
{
const MacroTriangle unit({0, 0}, {1, 0}, {0, 1});
const MacroTriangle tri({0.1, 0.0}, {1.2, 0.2}, {0.4, 0.9});

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

double close(Point a, Point b) { return norm(a - b); }

// Random bivariate polynomial of total degree <= 5.
struct Quintic
{
  std::array<double, 21> c{};
  explicit Quintic(unsigned seed)
  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& x : c)
      x = u(rng);
  }
  double operator()(Point p) const
  {
    double s = 0.0;
    int k = 0;
    for (int a = 0; a <= 5; ++a)
      for (int b = 0; a + b <= 5; ++b)
        s += c[k++] * std::pow(p.x, a) * std::pow(p.y, b);
    return s;
  }
};
} // namespace

TEST_CASE("domain points")
{
  const BasisInstance b(unit);
  const DomainPointSet xi = domain_points(b);
  const Point v1 = unit.vertex(0), v2 = unit.vertex(1);

  CHECK(close(xi[b.index_of(MultiplicityVector::parse("600101"))], v1) <= 1e-15);
  CHECK(close(xi[b.index_of(MultiplicityVector::parse("500201"))], (9 * v1 + v2) / 10) <= 1e-15);
  CHECK(close(xi[b.index_of(MultiplicityVector::parse("121211"))], Point{7.0 / 15, 1.0 / 6}) <= 1e-15);

  // Layout agrees with the stored barycentric coordinates.
  for (int j = 0; j < kBasisSize; ++j) {
    const auto& d = b[j].domain30;
    const Point p = unit.from_barycentric({{d[0] / 30.0, d[1] / 30.0, d[2] / 30.0}});
    CHECK(close(p, xi[j]) <= 1e-14);
  }

  // Distinct, and 8 on each edge at the Greville parameters.
  std::set<std::pair<long, long>> seen;
  for (const Point& p : xi)
    seen.insert({std::lround(p.x * 3000), std::lround(p.y * 3000)});
  CHECK(seen.size() == 39);
  const auto g = edge_greville();
  for (int e = 0; e < 3; ++e) {
    const Point a = unit.vertex(e), c = unit.vertex((e + 1) % 3);
    int on_edge = 0;
    for (const Point& p : xi)
      if (std::abs(orient(a, c, p)) <= 1e-14)
        ++on_edge;
    CHECK(on_edge == 8);
    for (double t : g) {
      const Point q = a + t * (c - a);
      bool found = false;
      for (const Point& p : xi)
        found = found || close(p, q) <= 1e-14;
      CHECK(found);
    }
  }
}

TEST_CASE("dual and domain points are S3 equivariant")
{
  const BasisInstance b(tri);
  const DomainPointSet xi = domain_points(b);
  for (const auto& sigma : Permutation::all())
    for (int j = 0; j < kBasisSize; ++j) {
      const int k = b.index_of(act(sigma, b[j].m));
      CHECK(close(xi[k], act(sigma, tri, xi[j])) <= 1e-13);
    }
}

TEST_CASE("blossom weights")
{
  double s = 0.0;
  const int binom[6] = {1, 5, 10, 10, 5, 1};
  for (int k = 1; k <= 5; ++k)
    s += binom[k] * blossom_weight(k);
  CHECK(std::abs(s - 1.0) <= 1e-14);
  CHECK(blossom_weight(1) == doctest::Approx(1.0 / 120));
  CHECK(blossom_weight(2) == doctest::Approx(-32.0 / 120));
  CHECK_THROWS_AS(blossom_weight(0), std::invalid_argument);
}

TEST_CASE("quasi-interpolant reproduces quintics")
{
  const BasisPtr b = instantiate(tri);
  const BasisValues one = quasi_coefficients(*b, [](Point) { return 1.0; });
  for (double c : one)
    CHECK(c == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(211);
  for (unsigned seed : {1u, 2u, 3u}) {
    const Quintic f(seed);
    const SplineFunction s = quasi_interpolant(b, f);
    for (int i = 0; i < 500; ++i) {
      const Point p = random_inside(tri, rng);
      CHECK(std::abs(s(p) - f(p)) <= 1e-9);
    }
  }

  // Every monomial on the unit triangle.
  const BasisPtr bu = instantiate(unit);
  for (int a = 0; a <= 5; ++a)
    for (int c = 0; a + c <= 5; ++c) {
      auto f = [a, c](Point p) { return std::pow(p.x, a) * std::pow(p.y, c); };
      const SplineFunction s = quasi_interpolant(bu, f);
      for (int i = 0; i < 50; ++i) {
        const Point p = random_inside(unit, rng);
        CHECK(std::abs(s(p) - f(p)) <= 1e-9 * std::max(1.0, std::abs(f(p))));
      }
    }
}

TEST_CASE("linear functions have ordinates on the function")
{
  const BasisPtr b = instantiate(tri);
  auto l = [](Point p) { return 0.3 - 2.0 * p.x + 0.7 * p.y; };
  const SplineFunction s = quasi_interpolant(b, l);
  const DomainPointSet xi = domain_points(*b);
  for (int j = 0; j < kBasisSize; ++j)
    CHECK(s.coeffs()[j] == doctest::Approx(l(xi[j])).epsilon(1e-13).scale(1.0));
}

TEST_CASE("Lagrange interpolation at the domain points")
{
  const BasisPtr b = instantiate(tri);
  const LagrangeSolver solver(*b);
  const CollocationMatrix& a = solver.matrix();
  for (int i = 0; i < kBasisSize; ++i)
    CHECK(a.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));

  BasisValues ones;
  ones.fill(1.0);
  for (double c : solver.solve(ones))
    CHECK(c == doctest::Approx(1.0).epsilon(1e-12));

  for (int k : {0, 11, 24, 38}) {
    BasisValues col;
    for (int i = 0; i < kBasisSize; ++i)
      col[i] = a(i, k);
    const BasisValues e = solver.solve(col);
    for (int j = 0; j < kBasisSize; ++j)
      CHECK(std::abs(e[j] - (j == k ? 1.0 : 0.0)) <= 1e-12);
  }

  std::mt19937_64 rng(223);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  BasisValues values;
  for (double& v : values)
    v = u(rng);
  const SplineFunction s = lagrange_interpolant(b, values);
  const DomainPointSet xi = domain_points(*b);
  double vmax = 0.0;
  for (double v : values)
    vmax = std::max(vmax, std::abs(v));
  for (int i = 0; i < kBasisSize; ++i)
    CHECK(std::abs(s(xi[i]) - values[i]) <= 1e-10 * vmax);

  values[3] = std::nan("");
  CHECK_THROWS_AS(lagrange_interpolant(b, values), std::invalid_argument);
}

TEST_CASE("stability estimate is affine invariant")
{
  const MacroTriangle equilateral({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2});
  const MacroTriangle thin({0, 0}, {100, 0}, {50, 1});
  const double k1 = stability_estimate(BasisInstance(equilateral));
  const double k2 = stability_estimate(BasisInstance(thin));
  const double k3 = stability_estimate(BasisInstance(tri));
  CHECK(k1 >= 1.0);
  CHECK(std::isfinite(k1));
  CHECK(std::abs(k1 - k2) <= 1e-10 * k1);
  CHECK(std::abs(k1 - k3) <= 1e-10 * k1);
  MESSAGE("K = " << k1);
}

TEST_CASE("Bezier ordinates approach spline values at rate h^2")
{
  const std::vector<double> hs = {0.4, 0.2, 0.1, 0.05};
  const Point anchor{0.5, 0.3};

  const auto lin = bezier_distance_check([](Point p) { return 1 + p.x - 3 * p.y; },
                                         tri, anchor, hs);
  for (double d : lin.distance)
    CHECK(d <= 1e-13);

  const auto sq = bezier_distance_check([](Point p) { return p.x * p.x; }, tri, anchor, hs);
  REQUIRE(sq.ratios.size() == 3);
  for (double r : sq.ratios)
    CHECK(r == doctest::Approx(4.0).epsilon(0.5 / 4));

  const auto sn = bezier_distance_check([](Point p) { return std::sin(p.x + 2 * p.y); },
                                        tri, anchor, hs);
  for (double r : sn.ratios)
    CHECK(r == doctest::Approx(4.0).epsilon(0.5 / 4));
}

TEST_CASE("quasi-interpolation error decays with order 6")
{
  const auto study = quasi_error_study(
      [](Point p) { return std::exp(p.x) * std::cos(2 * p.y); }, tri, {0.2, -0.1},
      {0.4, 0.2, 0.1, 0.05});
  // Least-squares slope of log2(error) against log2(h).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(study.h.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log2(study.h[i]), y = std::log2(study.error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  MESSAGE("observed order " << slope);
  CHECK(std::abs(slope - 6.0) <= 0.3);
}
