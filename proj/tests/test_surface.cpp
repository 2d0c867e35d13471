#include "doctest.h"

#include "ps12/surface.hpp"

#include <cmath>
#include <random>

using namespace ps12;

namespace
{
double quintic(Point p)
{
  const double x = p.x, y = p.y;
  return 1 - 2 * x + 0.5 * y + x * y - 3 * y * y + 0.7 * x * x * x - x * x * y * y +
         0.4 * std::pow(x, 5) - 0.9 * x * std::pow(y, 4);
}

double smooth(Point p) { return std::sin(p.x) * std::exp(p.y); }

Triangulation two_triangles()
{
  return Triangulation({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0, 1, 2}}, {{0, 2, 3}}});
}

// Regular grid over [0,1]^2 split along one diagonal: its dual graph has
// cycles only through shared vertices, not along a strip.
Triangulation strip(int n)
{
  std::vector<Point> v;
  for (int i = 0; i <= n; ++i) {
    v.push_back({double(i), 0});
    v.push_back({double(i) + 0.3, 1});
  }
  std::vector<std::array<int, 3>> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({2 * i, 2 * i + 2, 2 * i + 1});
    t.push_back({2 * i + 1, 2 * i + 2, 2 * i + 3});
  }
  return Triangulation(v, t);
}
} // namespace

TEST_CASE("mesh validation")
{
  CHECK_NOTHROW(two_triangles());
  CHECK_THROWS_AS(Triangulation({{0, 0}, {1, 0}}, {{{0, 1, 2}}}), MeshError);
  CHECK_THROWS_AS(Triangulation({{0, 0}, {1, 0}, {2, 0}}, {{{0, 1, 2}}}), MeshError);
  CHECK_THROWS_AS(Triangulation({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 1}}}), MeshError);
  CHECK_THROWS_AS(Triangulation({{0, 0}, {1, 0}, {0, 1}}, {}), MeshError);
  // Both neighbours traverse the diagonal 0 -> 2.
  CHECK_THROWS_AS(Triangulation({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0, 1, 2}}, {{0, 3, 2}}}),
                  MeshError);
  // Three triangles on one edge.
  CHECK_THROWS_AS(Triangulation({{0, 0}, {1, 0}, {0, 1}, {0, -1}, {1, 1}},
                                {{{0, 1, 2}}, {{1, 0, 3}}, {{0, 1, 4}}}),
                  MeshError);
  // Vertex 4 sits in the middle of edge (0, 1) of the first triangle.
  CHECK_THROWS_AS(Triangulation({{0, 0}, {2, 0}, {0, 2}, {1, -1}, {1, 0}},
                                {{{0, 1, 2}}, {{0, 3, 4}}}),
                  MeshError);
  CHECK_THROWS_AS(Triangulation({{0, 0}, {1, 0}, {0, 1}, {1, 0}, {1, 1}},
                                {{{0, 1, 2}}, {{3, 4, 2}}}),
                  MeshError);
  CHECK_THROWS_AS(Triangulation({{0, 0}, {1, 0}, {0, NAN}}, {{{0, 1, 2}}}), MeshError);
}

TEST_CASE("edges, refinement and the hexagon")
{
  const Triangulation m = two_triangles();
  CHECK(m.edges().size() == 5);
  const int d = m.edge_index(2, 0);
  REQUIRE(d >= 0);
  CHECK(m.edges()[d].t1 >= 0);
  CHECK(m.edge_index(1, 3) == -1);
  CHECK(m.mesh_size() == doctest::Approx(std::sqrt(2.0)));

  const Triangulation r = m.refine();
  CHECK(r.size() == 8);
  CHECK(r.vertices().size() == 9);
  CHECK(r.mesh_size() == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(r.refine().size() == 32);

  const Triangulation h = regular_hexagon(2.0);
  CHECK(h.size() == 6);
  CHECK(h.edges().size() == 12);
  for (int t = 0; t < 6; ++t) {
    CHECK(h.triangles()[t][0] == 0);
    CHECK(h.triangle(t).counterclockwise());
  }
  CHECK(h.mesh_size() == doctest::Approx(2.0));
}

TEST_CASE("fit modes")
{
  CHECK(parse_fit_mode("c2") == FitMode::c2);
  CHECK(to_string(FitMode::independent) == "independent");
  CHECK_THROWS_AS(parse_fit_mode("c3"), std::invalid_argument);
}

TEST_CASE("quintic data is reproduced on a single triangle")
{
  const Triangulation m({{0.1, 0.0}, {1.2, 0.2}, {0.4, 0.9}}, {{{0, 1, 2}}});
  const FitResult r = fit(m, quintic, FitMode::independent);
  CHECK(r.max_error <= 1e-9 * r.scale);
  CHECK(r.edges.empty());
  CHECK(r.sweep == std::vector<int>{0});
}

TEST_CASE("independent fits are continuous but not C1")
{
  // Edge ordinates only see f on the edge, so neighbours agree there.
  const FitResult r = fit(two_triangles(), smooth, FitMode::independent);
  REQUIRE(r.edges.size() == 1);
  const JumpReport& j = r.edges[0].jumps;
  CHECK(j.jump[0] <= 1e-12);
  CHECK(j.jump[1] > 1e-8);
  CHECK(j.jump[1] <= 100 * r.max_error / r.edges.size());
}

TEST_CASE("propagated fits are C2 across tree edges")
{
  for (FitMode mode : {FitMode::c1, FitMode::c2}) {
    const FitResult r = fit(strip(3), smooth, mode);
    CHECK(r.unenforced_edges.empty());
    REQUIRE(r.edges.size() == 5);
    const int order = mode == FitMode::c1 ? 1 : 2;
    for (const EdgeReport& e : r.edges) {
      CHECK(e.tree_edge);
      for (int k = 0; k <= order; ++k)
        CHECK(e.jumps.jump[k] <= 1e-8 * std::max(1.0, e.jumps.scale[k]));
    }
    // Propagation trades accuracy for smoothness but stays close to f.
    CHECK(r.max_error < 1e-2);
  }
  // c1 leaves a second-order jump.
  const FitResult c1 = fit(strip(3), smooth, FitMode::c1);
  double worst = 0;
  for (const EdgeReport& e : c1.edges)
    worst = std::max(worst, e.jumps.jump[2]);
  CHECK(worst > 1e-8);
}

TEST_CASE("cycles in the dual graph are reported, not enforced")
{
  const Triangulation h = regular_hexagon();
  const FitResult r = fit(h, smooth, FitMode::c2);
  CHECK(r.sweep.size() == 6);
  CHECK(r.sweep.front() == 0);
  CHECK(r.unenforced_edges.size() == 1);
  int tree = 0;
  for (const EdgeReport& e : r.edges)
    if (e.tree_edge) {
      ++tree;
      CHECK(e.jumps.relative() <= 1e-8);
    } else {
      CHECK(e.edge == r.unenforced_edges[0]);
    }
  CHECK(tree == 5);
}

TEST_CASE("propagate_across rejects triangles without a common edge")
{
  const auto a = quasi_interpolant(instantiate(MacroTriangle({0, 0}, {1, 0}, {0, 1})), smooth);
  auto b = quasi_interpolant(instantiate(MacroTriangle({5, 5}, {6, 5}, {5, 6})), smooth);
  CHECK_THROWS_AS(propagate_across(a, b, 2), std::invalid_argument);
}

TEST_CASE("convergence study")
{
  const Triangulation base = two_triangles();
  CHECK_THROWS_AS(convergence_study(smooth, base, 2), std::invalid_argument);

  const auto exact = convergence_study(quintic, base, 3);
  for (const auto& row : exact) {
    CHECK(row.exact);
    CHECK_FALSE(row.order.has_value());
  }

  const auto rows = convergence_study(smooth, base, 4);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].triangles == 2);
  CHECK(rows[3].triangles == 128);
  CHECK(rows[1].h == doctest::Approx(rows[0].h / 2));
  for (std::size_t i = 2; i < rows.size(); ++i) {
    REQUIRE(rows[i].order.has_value());
    CHECK(*rows[i].order == doctest::Approx(6.0).epsilon(0.05));
  }
}

TEST_CASE("error pattern stays inside the triangle")
{
  const auto p = error_pattern(500);
  CHECK(p.size() == 500);
  for (const auto& b : p)
    for (double x : b.b)
      CHECK(x >= 0.0);
}
