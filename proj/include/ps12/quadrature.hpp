#pragma once

#include "ps12/geometry.hpp"

#include <array>
#include <vector>

namespace ps12
{

struct QuadraturePoint
{
  Point p;
  double w;
};

/// Symmetric 7-point rule, exact for quintics, applied on a uniform
/// refinement of triangle (a, b, c) into refinement^2 pieces. Weights sum to
/// the area.
std::vector<QuadraturePoint> triangle_rule(Point a, Point b, Point c,
                                           int refinement);

/// The same rule over all 12 subtriangles of a split.
std::vector<QuadraturePoint> split_rule(const SplitSites& s, int refinement);

/// Uniform refinement of (a, b, c): vertices P(i, j) = a + i/r (b-a) + j/r (c-a)
/// listed row by row, and the r^2 triangles as index triples with the winding
/// of (a, b, c).
struct RefinedTriangle
{
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
};
RefinedTriangle refine_triangle(Point a, Point b, Point c, int r);

} // namespace ps12
