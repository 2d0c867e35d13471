#include "ps12/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ps12
{

RefinedTriangle refine_triangle(Point a, Point b, Point c, int r)
{
  if (r < 1)
    throw std::invalid_argument("refine_triangle: refinement must be >= 1");
  RefinedTriangle out;
  std::vector<int> row_start(r + 2, 0);
  for (int i = 0; i <= r; ++i) {
    row_start[i] = static_cast<int>(out.vertices.size());
    for (int j = 0; i + j <= r; ++j)
      out.vertices.push_back(a + (double(i) / r) * (b - a) +
                             (double(j) / r) * (c - a));
  }
  auto id = [&](int i, int j) { return row_start[i] + j; };
  for (int i = 0; i < r; ++i)
    for (int j = 0; i + j < r; ++j) {
      out.triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
      if (i + j + 1 < r)
        out.triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return out;
}

std::vector<QuadraturePoint> triangle_rule(Point a, Point b, Point c,
                                           int refinement)
{
  const double s15 = std::sqrt(15.0);
  const double a1 = (6.0 - s15) / 21.0;
  const double a2 = (6.0 + s15) / 21.0;
  const double w0 = 9.0 / 40.0;
  const double w1 = (155.0 - s15) / 1200.0;
  const double w2 = (155.0 + s15) / 1200.0;
  const std::array<std::array<double, 4>, 7> rule = {{
      {1.0 / 3, 1.0 / 3, 1.0 / 3, w0},
      {a1, a1, 1 - 2 * a1, w1},
      {a1, 1 - 2 * a1, a1, w1},
      {1 - 2 * a1, a1, a1, w1},
      {a2, a2, 1 - 2 * a2, w2},
      {a2, 1 - 2 * a2, a2, w2},
      {1 - 2 * a2, a2, a2, w2},
  }};

  const RefinedTriangle mesh = refine_triangle(a, b, c, refinement);
  std::vector<QuadraturePoint> out;
  out.reserve(mesh.triangles.size() * rule.size());
  for (const auto& t : mesh.triangles) {
    const Point p0 = mesh.vertices[t[0]];
    const Point p1 = mesh.vertices[t[1]];
    const Point p2 = mesh.vertices[t[2]];
    const double area = 0.5 * std::abs(orient(p0, p1, p2));
    for (const auto& q : rule)
      out.push_back({q[0] * p0 + q[1] * p1 + q[2] * p2, q[3] * area});
  }
  return out;
}

std::vector<QuadraturePoint> split_rule(const SplitSites& s, int refinement)
{
  std::vector<QuadraturePoint> out;
  for (const auto& t : s.sub) {
    auto part = triangle_rule(s.v[t[0]], s.v[t[1]], s.v[t[2]], refinement);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

} // namespace ps12
