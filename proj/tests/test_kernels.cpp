#include "doctest.h"

#include "ps12/interpolation.hpp"
#include "ps12/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <random>

using namespace ps12;

namespace
{
const MacroTriangle tri({0.1, 0.0}, {1.2, 0.2}, {0.4, 0.9});

std::vector<Point> sample(int n, unsigned seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    double a = u(rng), b = u(rng);
    if (a + b > 1) {
      a = 1 - a;
      b = 1 - b;
    }
    pts.push_back(tri.from_barycentric({{1 - a - b, a, b}}));
  }
  return pts;
}
} // namespace

TEST_CASE("parallel kernels match the serial reference")
{
  omp_set_num_threads(4);
  const BasisPtr b = instantiate(tri);
  auto f = [](Point p) { return std::sin(3 * p.x) * std::exp(p.y); };

  const BasisValues cs = kernels::quasi_coefficients_serial(*b, f);
  const BasisValues cp = kernels::quasi_coefficients_parallel(*b, f);
  CHECK(cs == cp);

  const auto pts = sample(300, 5);
  const SplineFunction s(b, cs);
  CHECK(kernels::evaluate_serial(s, pts) == kernels::evaluate_parallel(s, pts));
  CHECK(kernels::basis_values_serial(*b, pts) == kernels::basis_values_parallel(*b, pts));
}

TEST_CASE("exceptions leave parallel regions")
{
  const BasisPtr b = instantiate(tri);
  auto pts = sample(64, 7);
  pts[40] = {10.0, 10.0};
  const SplineFunction s(b, BasisValues{});
  CHECK_THROWS_AS(kernels::evaluate_parallel(s, pts), std::out_of_range);
  CHECK_THROWS_AS(kernels::basis_values_parallel(*b, pts), std::out_of_range);
}

TEST_CASE("blossom of a quintic at repeated points is the value")
{
  auto f = [](Point p) { return std::pow(p.x - 2 * p.y, 5) + p.x * p.y; };
  const Point q{0.3, -0.2};
  CHECK(kernels::blossom5(f, {q, q, q, q, q}) == doctest::Approx(f(q)).epsilon(1e-13));
}

TEST_CASE("thread cap from the environment")
{
  setenv("PS12_THREADS", "2", 1);
  CHECK(configure_threads() == 2);
  setenv("PS12_THREADS", "bogus", 1);
  CHECK(configure_threads() == 2);
  unsetenv("PS12_THREADS");
}
