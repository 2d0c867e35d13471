#pragma once

/// \file surface.hpp
/// Triangulations, piecewise fits with one quasi-interpolant per triangle,
/// smoothness propagation across edges and convergence studies.

#include "ps12/interpolation.hpp"
#include "ps12/smooth_join.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ps12
{

/// Malformed or non-conforming mesh input.
class MeshError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct MeshEdge
{
  int a, b;
  /// Triangles on either side; t1 = -1 on the boundary.
  int t0, t1 = -1;
};

class Triangulation
{
public:
  Triangulation() = default;
  /// Validates and builds the edge table. Throws MeshError for indices out of
  /// range, degenerate triangles, edges shared by more than two triangles,
  /// shared edges traversed the same way by both neighbours, and vertices
  /// lying inside an edge they are not an endpoint of.
  Triangulation(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  int size() const { return static_cast<int>(triangles_.size()); }

  MacroTriangle triangle(int t) const;
  /// Longest edge.
  double mesh_size() const;
  /// Index of the edge {a, b}, or -1.
  int edge_index(int a, int b) const;

  /// Each triangle split into four at its edge midpoints.
  Triangulation refine() const;

private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<MeshEdge> edges_;
};

/// Six equilateral triangles around the origin, each listed with the center
/// first.
Triangulation regular_hexagon(double radius = 1.0);

enum class FitMode
{
  independent,
  c1,
  c2
};

std::string to_string(FitMode m);
/// "independent", "c1" or "c2"; throws std::invalid_argument otherwise.
FitMode parse_fit_mode(const std::string& s);

struct EdgeReport
{
  int edge;
  /// True when the edge joins a triangle to its propagation parent.
  bool tree_edge;
  JumpReport jumps;
};

struct FitResult
{
  FitMode mode = FitMode::independent;
  std::vector<SplineFunction> pieces;
  /// Interior edges only.
  std::vector<EdgeReport> edges;
  /// Triangles in the order the sweep visited them.
  std::vector<int> sweep;
  /// Interior edges that close a cycle in the sweep and are not enforced.
  std::vector<int> unenforced_edges;
  double max_error = 0.0;
  double rms_error = 0.0;
  /// max |f| over the error samples.
  double scale = 0.0;
};

/// Q(f) on every triangle; in c1/c2 mode, ordinates are then overwritten
/// across each edge of a breadth-first spanning tree of the dual graph
/// (seeded at triangle 0 of each component). Errors are sampled at a fixed
/// barycentric pattern of `error_samples` points per triangle.
FitResult fit(const Triangulation& mesh, const ScalarField& f, FitMode mode,
              int error_samples = 60);

/// Writes forced ordinates from `from` into `to` across their shared edge.
void propagate_across(const SplineFunction& from, SplineFunction& to, int order);

struct ConvergenceRow
{
  int level;
  int triangles;
  double h;
  double error;
  /// log2(e_{level-1} / e_level); empty on the first row or when exact.
  std::optional<double> order;
  /// Error at the round-off floor.
  bool exact;
};

/// Q(f) on `levels` successive 4-splits of the base mesh (levels >= 3,
/// counting the base). Throws std::invalid_argument for fewer levels.
std::vector<ConvergenceRow> convergence_study(const ScalarField& f,
                                              const Triangulation& base, int levels,
                                              int error_samples = 60);

/// Max |f - s| at the error sample pattern over all pieces.
double max_error(const std::vector<SplineFunction>& pieces, const ScalarField& f,
                 int error_samples = 60);

/// Barycentric sample pattern used for errors: deterministic, interior.
std::vector<Barycentric> error_pattern(int n);

} // namespace ps12
