#pragma once

/// \file io.hpp
/// Mesh input (JSON, OFF), coefficient CSV files and OBJ/CSV exports of
/// surfaces, split wireframes and control nets.
///
/// JSON mesh:
///   {"vertices": [[0, 0], [1, 0], [0, 1]], "triangles": [[0, 1, 2]]}
/// OFF mesh (z ignored, faces must be triangles, '#' starts a comment):
///   OFF
///   3 1 0
///   0 0 0
///   1 0 0
///   0 1 0
///   3 0 1 2
/// Coefficient CSV, one row per ordinate, local indices in canonical order:
///   triangle,index,value
///   0,0,1.25

#include "ps12/surface.hpp"

#include <array>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ps12
{

/// File could not be opened, read or written.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Parse errors and mesh problems throw MeshError.
Triangulation read_mesh_json(std::istream& in);
Triangulation read_mesh_off(std::istream& in);
/// Chooses the format by extension (.json, .off), else by an OFF header.
Triangulation load_mesh(const std::filesystem::path& path);

void write_coefficients_csv(std::ostream& out, const std::vector<SplineFunction>& pieces);
/// Throws MeshError on malformed rows, out-of-range indices or missing
/// entries.
std::vector<BasisValues> read_coefficients_csv(std::istream& in, int triangles);

/// Points as "x,y" rows; an optional header row "x,y" is skipped.
std::vector<Point> read_points_csv(std::istream& in);

/// Polygon soup in 3D: faces (v/f records) and polylines (l records).
struct ObjMesh
{
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::vector<int>> faces;
  std::vector<std::vector<int>> lines;
};

/// Graph z = s(x, y) on each subtriangle's regular refinement with
/// `resolution` segments per side: 12 (r+1)(r+2)/2 vertices and 12 r^2 faces
/// per macrotriangle. Throws std::invalid_argument for resolution < 1.
ObjMesh surface_mesh(const std::vector<SplineFunction>& pieces, int resolution);

/// The 12-split edges lifted onto the graph, as polylines of `resolution`
/// segments each.
ObjMesh split_wireframe(const std::vector<SplineFunction>& pieces, int resolution);

/// Points (xi_j, c_j) joined by the control-net cells.
ObjMesh control_net(const std::vector<SplineFunction>& pieces);

/// Cells of the control net over the canonical indices: the Delaunay
/// subdivision of the domain points of an equilateral triangle with
/// co-circular cells merged. 33 triangles, 9 quadrilaterals and one hexagon,
/// each counterclockwise in that reference.
const std::vector<std::vector<int>>& control_net_cells();

void write_obj(std::ostream& out, const ObjMesh& mesh, const std::string& comment = {});
/// "x,y,value" rows for every vertex.
void write_vertices_csv(std::ostream& out, const ObjMesh& mesh);

/// Opens `path` for writing and calls `body`; throws IoError on failure.
void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body);

} // namespace ps12
