// ps12: command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 I/O error.

#include "ps12/classify.hpp"
#include "ps12/hermite_nodal.hpp"
#include "ps12/io.hpp"
#include "ps12/kernels.hpp"
#include "ps12/property_suite.hpp"
#include "ps12/smooth_join.hpp"
#include "ps12/surface.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

using namespace ps12;

namespace
{

constexpr int kOk = 0, kFailed = 1, kBadInput = 2, kIo = 3;

struct BadInput : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

std::string fmt(const char* f, double x)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const std::map<std::string, ScalarField>& fields()
{
  static const std::map<std::string, ScalarField> m = {
      {"one", [](Point) { return 1.0; }},
      {"sin_exp", [](Point p) { return std::sin(p.x) * std::exp(p.y); }},
      {"sin_x2y", [](Point p) { return std::sin(p.x + 2 * p.y); }},
      {"peak", [](Point p) { return std::exp(-4 * (p.x * p.x + p.y * p.y)); }},
      {"quintic",
       [](Point p) {
         const double x = p.x, y = p.y;
         return 1 - x + 2 * y + x * y * y - 0.5 * x * x * x * y + std::pow(x - y, 5) / 3;
       }},
      {"franke",
       [](Point p) {
         const double x = p.x, y = p.y;
         return 0.75 * std::exp(-(std::pow(9 * x - 2, 2) + std::pow(9 * y - 2, 2)) / 4) +
                0.75 * std::exp(-std::pow(9 * x + 1, 2) / 49 - (9 * y + 1) / 10) +
                0.5 * std::exp(-(std::pow(9 * x - 7, 2) + std::pow(9 * y - 3, 2)) / 4) -
                0.2 * std::exp(-std::pow(9 * x - 4, 2) - std::pow(9 * y - 7, 2));
       }},
  };
  return m;
}

std::vector<std::string> field_names()
{
  std::vector<std::string> out;
  for (const auto& [k, v] : fields())
    out.push_back(k);
  return out;
}

// Mesh options shared by several subcommands.
struct MeshSource
{
  std::string path;
  bool hexagon = false;

  void add(CLI::App* app)
  {
    auto* m = app->add_option("--mesh", path, "Mesh file (.json or .off)");
    app->add_flag("--hexagon", hexagon, "Regular hexagon split at its center")->excludes(m);
  }
  Triangulation load(const Triangulation& fallback) const
  {
    if (hexagon)
      return regular_hexagon();
    if (!path.empty())
      return load_mesh(path);
    return fallback;
  }
};

Triangulation unit_square()
{
  return Triangulation({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0, 1, 2}}, {{0, 2, 3}}});
}

std::vector<SplineFunction> pieces_from(const Triangulation& mesh,
                                        const std::vector<BasisValues>& c)
{
  std::vector<SplineFunction> out;
  for (int t = 0; t < mesh.size(); ++t)
    out.emplace_back(instantiate(mesh.triangle(t)), c[t]);
  return out;
}

std::vector<BasisValues> load_coefficients(const std::string& path, int triangles)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open coefficient file " + path);
  return read_coefficients_csv(in, triangles);
}

// Triangle containing p (closed, with a small tolerance), or -1.
int locate_triangle(const Triangulation& mesh, Point p)
{
  int best = -1;
  double best_min = -1e-12;
  for (int t = 0; t < mesh.size(); ++t) {
    const Barycentric b = barycentric(mesh.triangle(t), p);
    const double m = std::min({b[0], b[1], b[2]});
    if (m >= best_min) {
      best_min = m;
      best = t;
    }
  }
  return best;
}

Point parse_point(const std::string& s)
{
  std::istringstream in(s);
  Point p;
  char comma;
  if (!(in >> p.x >> comma >> p.y) || comma != ',' || !(in >> std::ws).eof())
    throw BadInput("expected x,y but got '" + s + "'");
  return p;
}

// ---------------------------------------------------------------- classify

int run_classify(int degree, bool check, bool verbose)
{
  if (degree != 5)
    throw BadInput("only degree 5 is supported");
  const auto reps = admissible_list();
  for (const auto& m : reps) {
    std::cout << m.label();
    if (verbose)
      std::cout << "  " << is_admissible(m).reason;
    std::cout << '\n';
  }
  if (!check)
    return kOk;
  const CrossCheck c = cross_check(build_sites(MacroTriangle({0, 0}, {1, 0}, {0.3, 0.9})));
  std::cerr << "cross-check: " << c.candidates << " candidates, " << c.orbits
            << " orbits, " << c.admissible_orbits << " admissible, "
            << c.disagreements.size() << " disagreements\n";
  for (const auto& d : c.disagreements)
    std::cerr << "  " << d << '\n';
  return c.disagreements.empty() ? kOk : kFailed;
}

// ------------------------------------------------------------------ verify

int run_verify(const SuiteOptions& o)
{
  const auto checks = run_property_suite(o);
  bool ok = true;
  std::cout << "seed " << o.seed << ", " << o.triangles << " triangles, " << o.points
            << " points, " << o.join_trials << " join trials\n";
  for (const auto& c : checks) {
    ok = ok && c.pass;
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  "
              << fmt("%.3e", c.value) << (c.at_least ? " >= " : " <= ")
              << fmt("%.1e", c.tolerance);
    if (!c.detail.empty())
      std::cout << "  (" << c.detail << ")";
    std::cout << '\n';
  }
  std::cout << (ok ? "all checks passed" : "some checks failed") << '\n';
  return ok ? kOk : kFailed;
}

// -------------------------------------------------------------------- eval

int run_eval(const MeshSource& ms, const std::string& coeffs,
             const std::string& points_path, const std::vector<std::string>& point_args)
{
  const Triangulation mesh = ms.load(Triangulation{});
  if (mesh.size() == 0)
    throw BadInput("eval needs --mesh or --hexagon");
  const auto pieces = pieces_from(mesh, load_coefficients(coeffs, mesh.size()));

  std::vector<Point> pts;
  if (!points_path.empty()) {
    std::ifstream in(points_path);
    if (!in)
      throw IoError("cannot open points file " + points_path);
    pts = read_points_csv(in);
  }
  for (const auto& s : point_args)
    pts.push_back(parse_point(s));
  if (pts.empty())
    throw BadInput("no points given (--points or --point)");

  std::vector<int> where;
  for (const Point p : pts) {
    where.push_back(locate_triangle(mesh, p));
    if (where.back() < 0)
      throw BadInput("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                     ") lies outside the mesh");
  }
  std::cout << "x,y,value\n";
  std::cout.precision(15);
  for (std::size_t i = 0; i < pts.size(); ++i)
    std::cout << pts[i].x << ',' << pts[i].y << ',' << pieces[where[i]](pts[i]) << '\n';
  return kOk;
}

// --------------------------------------------------------------------- fit

int run_fit(const MeshSource& ms, const std::string& fname, const std::string& mode_name,
            const std::string& coeffs_out)
{
  const Triangulation mesh = ms.load(unit_square());
  const FitMode mode = parse_fit_mode(mode_name);
  const FitResult r = fit(mesh, fields().at(fname), mode);

  std::cout << "mode " << to_string(mode) << ", " << mesh.size() << " triangles, h = "
            << fmt("%.4g", mesh.mesh_size()) << '\n';
  std::cout << "max error " << fmt("%.3e", r.max_error) << ", rms error "
            << fmt("%.3e", r.rms_error) << ", max |f| " << fmt("%.3e", r.scale) << '\n';
  std::cout << "edge  a  b  tree  jump0      jump1      jump2      relative\n";
  bool ok = true;
  const int order = mode == FitMode::c1 ? 1 : 2;
  for (const EdgeReport& e : r.edges) {
    const MeshEdge& me = mesh.edges()[e.edge];
    std::cout << e.edge << "  " << me.a << "  " << me.b << "  " << (e.tree_edge ? "yes" : "no ")
              << "   " << fmt("%.3e", e.jumps.jump[0]) << "  " << fmt("%.3e", e.jumps.jump[1])
              << "  " << fmt("%.3e", e.jumps.jump[2]) << "  "
              << fmt("%.3e", e.jumps.relative()) << '\n';
    if (mode != FitMode::independent && e.tree_edge)
      for (int k = 0; k <= order; ++k)
        ok = ok && e.jumps.jump[k] <= 1e-8 * std::max(1.0, e.jumps.scale[k]);
  }
  if (!r.unenforced_edges.empty()) {
    std::cout << "cycle edges not enforced:";
    for (int e : r.unenforced_edges)
      std::cout << ' ' << e;
    std::cout << '\n';
  }
  if (!coeffs_out.empty())
    write_file(coeffs_out, [&](std::ostream& out) { write_coefficients_csv(out, r.pieces); });
  if (!ok)
    std::cout << "propagated edges exceed the jump tolerance\n";
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------- converge

int run_converge(const MeshSource& ms, const std::string& fname, int levels,
                 const std::string& csv)
{
  const Triangulation base = ms.load(unit_square());
  const auto rows = convergence_study(fields().at(fname), base, levels);
  std::cout << "level  triangles  h           error       order\n";
  for (const auto& r : rows) {
    std::cout << r.level << "      " << r.triangles << "  " << fmt("%.4e", r.h) << "  "
              << fmt("%.4e", r.error) << "  "
              << (r.exact ? "exact" : r.order ? fmt("%.3f", *r.order) : "-") << '\n';
  }
  if (!csv.empty())
    write_file(csv, [&](std::ostream& out) {
      out << "level,triangles,h,error,order\n";
      out.precision(12);
      for (const auto& r : rows) {
        out << r.level << ',' << r.triangles << ',' << r.h << ',' << r.error << ',';
        if (r.exact)
          out << "exact";
        else if (r.order)
          out << *r.order;
        out << '\n';
      }
    });
  return kOk;
}

// ------------------------------------------------------------------- joins

int run_joins(const std::string& beta_s, int order, bool symbolic)
{
  std::istringstream in(beta_s);
  Barycentric beta;
  char c1, c2;
  if (!(in >> beta.b[0] >> c1 >> beta.b[1] >> c2 >> beta.b[2]) || c1 != ',' || c2 != ',' ||
      !(in >> std::ws).eof())
    throw BadInput("--beta expects b1,b2,b3");
  if (std::abs(beta[0] + beta[1] + beta[2] - 1) > 1e-12)
    throw BadInput("beta must sum to 1");
  if (order < 0 || order > 2)
    throw BadInput("--order must be 0, 1 or 2 (C3 joins are not available)");

  const SmoothnessConstraints sc(order);
  for (const ConstraintRow& row : sc.rows()) {
    if (symbolic) {
      std::cout << row.to_string() << '\n';
      continue;
    }
    const auto dense = row.evaluate(beta);
    std::cout << "c~" << row.target + 1 << ": [";
    for (int j = 0; j < kBasisSize; ++j)
      std::cout << (j ? ", " : "") << fmt("%.6g", dense[j] == 0 ? 0.0 : dense[j]);
    std::cout << "]\n";
  }
  return kOk;
}

// ------------------------------------------------------------------ export

struct ExportOptions
{
  MeshSource mesh;
  std::string function, coeffs, mode = "independent", out_dir = ".", prefix = "ps12";
  bool nodal = false;
  int vertex = 0;
  int resolution = 8;
};

int run_export(const ExportOptions& o)
{
  const Triangulation mesh = o.mesh.load(regular_hexagon());
  const int sources = !o.function.empty() + !o.coeffs.empty() + o.nodal;
  if (sources != 1)
    throw BadInput("choose exactly one of --function, --coeffs, --nodal");
  if (o.resolution < 1)
    throw BadInput("--resolution must be at least 1");

  std::vector<SplineFunction> pieces;
  if (!o.function.empty()) {
    pieces = fit(mesh, fields().at(o.function), parse_fit_mode(o.mode)).pieces;
  } else if (!o.coeffs.empty()) {
    pieces = pieces_from(mesh, load_coefficients(o.coeffs, mesh.size()));
  } else {
    // Corner nodal function of one mesh vertex, zero on triangles away from it.
    if (o.vertex < 0 || o.vertex >= static_cast<int>(mesh.vertices().size()))
      throw BadInput("--vertex out of range");
    for (int t = 0; t < mesh.size(); ++t) {
      const auto b = instantiate(mesh.triangle(t));
      const auto& tri = mesh.triangles()[t];
      const auto it = std::find(tri.begin(), tri.end(), o.vertex);
      if (it == tri.end())
        pieces.emplace_back(b, BasisValues{});
      else
        pieces.push_back(eps_vertex(b, static_cast<int>(it - tri.begin())));
    }
  }

  namespace fs = std::filesystem;
  const fs::path dir(o.out_dir);
  const ObjMesh surf = surface_mesh(pieces, o.resolution);
  const auto write = [&](const std::string& name, const std::function<void(std::ostream&)>& f) {
    write_file(dir / (o.prefix + name), f);
    std::cout << (dir / (o.prefix + name)).string() << '\n';
  };
  write("_surface.obj", [&](std::ostream& out) { write_obj(out, surf, "graph of the spline"); });
  write("_surface.csv", [&](std::ostream& out) { write_vertices_csv(out, surf); });
  write("_wireframe.obj", [&](std::ostream& out) {
    write_obj(out, split_wireframe(pieces, o.resolution), "12-split edges on the graph");
  });
  write("_control_net.obj",
        [&](std::ostream& out) { write_obj(out, control_net(pieces), "control net"); });
  return kOk;
}

} // namespace

int main(int argc, char** argv)
{
  configure_threads();
  CLI::App app{"C3 quintic simplex splines on the Powell-Sabin 12-split"};
  app.require_subcommand(1);

  int degree = 5;
  bool check = false, verbose = false;
  auto* classify = app.add_subcommand("classify", "List the admissible simplex splines, one orbit each");
  classify->add_option("--degree", degree, "Spline degree (only 5)");
  classify->add_flag("--check", check, "Cross-check against sampled smoothness");
  classify->add_flag("--verbose", verbose, "Print the reason next to each orbit");

  SuiteOptions suite;
  auto* verify = app.add_subcommand("verify", "Run the seeded property suite");
  verify->add_option("--seed", suite.seed, "Random seed");
  verify->add_option("--triangles", suite.triangles, "Random triangles")->check(CLI::PositiveNumber);
  verify->add_option("--points", suite.points, "Points per triangle")->check(CLI::PositiveNumber);
  verify->add_option("--joins", suite.join_trials, "Join trials")->check(CLI::PositiveNumber);

  MeshSource eval_mesh;
  std::string eval_coeffs, eval_points;
  std::vector<std::string> eval_point;
  auto* eval = app.add_subcommand("eval", "Evaluate a coefficient file at points");
  eval_mesh.add(eval);
  eval->add_option("--coeffs", eval_coeffs, "Coefficient CSV")->required();
  eval->add_option("--points", eval_points, "CSV of x,y rows");
  eval->add_option("--point", eval_point, "A point x,y (repeatable)");

  MeshSource fit_mesh;
  std::string fit_function = "sin_exp", fit_mode = "c2", fit_out;
  auto* fitc = app.add_subcommand("fit", "Fit a named function on a mesh");
  fit_mesh.add(fitc);
  fitc->add_option("--function", fit_function, "Target function")
      ->check(CLI::IsMember(field_names()));
  fitc->add_option("--mode", fit_mode, "independent, c1 or c2")
      ->check(CLI::IsMember({"independent", "c1", "c2"}));
  fitc->add_option("--coeffs-out", fit_out, "Write coefficients as CSV");

  MeshSource conv_mesh;
  std::string conv_function = "sin_exp", conv_csv;
  int levels = 4;
  auto* converge = app.add_subcommand("converge", "Errors under uniform refinement");
  conv_mesh.add(converge);
  converge->add_option("--function", conv_function, "Target function")
      ->check(CLI::IsMember(field_names()));
  converge->add_option("--levels", levels, "Number of meshes (>= 3)");
  converge->add_option("--csv", conv_csv, "Write the table as CSV");

  std::string beta;
  int order = 2;
  bool symbolic = false;
  auto* joins = app.add_subcommand("joins", "Print the smoothness conditions for a beta");
  joins->add_option("--beta", beta, "Barycentric coordinates b1,b2,b3 of the opposite vertex")
      ->required()
      ->allow_extra_args(false);
  joins->add_option("--order", order, "Smoothness order 0..2");
  joins->add_flag("--symbolic", symbolic, "Print rows as formulas in beta");

  ExportOptions ex;
  auto* exportc = app.add_subcommand("export", "Write surface, wireframe and control net");
  ex.mesh.add(exportc);
  exportc->add_option("--function", ex.function, "Fit this function")
      ->check(CLI::IsMember(field_names()));
  exportc->add_option("--mode", ex.mode, "Fit mode")
      ->check(CLI::IsMember({"independent", "c1", "c2"}));
  exportc->add_option("--coeffs", ex.coeffs, "Coefficient CSV");
  exportc->add_flag("--nodal", ex.nodal, "Corner nodal function of --vertex");
  exportc->add_option("--vertex", ex.vertex, "Mesh vertex for --nodal");
  exportc->add_option("--resolution", ex.resolution, "Segments per subtriangle side");
  exportc->add_option("--out-dir", ex.out_dir, "Output directory");
  exportc->add_option("--prefix", ex.prefix, "File name prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*classify)
      return run_classify(degree, check, verbose);
    if (*verify)
      return run_verify(suite);
    if (*eval)
      return run_eval(eval_mesh, eval_coeffs, eval_points, eval_point);
    if (*fitc)
      return run_fit(fit_mesh, fit_function, fit_mode, fit_out);
    if (*converge)
      return run_converge(conv_mesh, conv_function, levels, conv_csv);
    if (*joins)
      return run_joins(beta, order, symbolic);
    if (*exportc)
      return run_export(ex);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    // MeshError and BadInput land here.
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}
