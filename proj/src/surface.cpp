#include "ps12/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace ps12
{

Triangulation::Triangulation(std::vector<Point> vertices,
                             std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles))
{
  const int nv = static_cast<int>(vertices_.size());
  if (triangles_.empty())
    throw MeshError("mesh has no triangles");
  for (const Point& p : vertices_)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw MeshError("mesh vertex is not finite");

  double extent = 0.0;
  for (const Point& p : vertices_)
    extent = std::max({extent, std::abs(p.x), std::abs(p.y)});

  std::map<std::pair<int, int>, int> index;
  for (int t = 0; t < size(); ++t) {
    const auto& tri = triangles_[t];
    for (int v : tri)
      if (v < 0 || v >= nv)
        throw MeshError("triangle " + std::to_string(t) + " has a vertex index out of range");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0])
      throw MeshError("triangle " + std::to_string(t) + " repeats a vertex");
    const double area = orient(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (!(std::abs(area) > 1e-14 * extent * extent))
      throw MeshError("triangle " + std::to_string(t) + " is degenerate");

    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      const auto key = std::minmax(a, b);
      const auto it = index.find(key);
      if (it == index.end()) {
        index[key] = static_cast<int>(edges_.size());
        edges_.push_back({a, b, t, -1});
        continue;
      }
      MeshEdge& e = edges_[it->second];
      if (e.t1 >= 0)
        throw MeshError("edge (" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + ") is shared by more than two triangles");
      if (e.a == a)
        throw MeshError("triangles " + std::to_string(e.t0) + " and " + std::to_string(t) +
                        " are inconsistently oriented");
      e.t1 = t;
    }
  }

  // Duplicate positions and hanging vertices, via vertices sorted by x.
  std::vector<int> used;
  {
    std::vector<char> flag(nv, 0);
    for (const auto& tri : triangles_)
      for (int v : tri)
        flag[v] = 1;
    for (int v = 0; v < nv; ++v)
      if (flag[v])
        used.push_back(v);
  }
  std::sort(used.begin(), used.end(), [&](int i, int j) {
    return std::pair(vertices_[i].x, vertices_[i].y) < std::pair(vertices_[j].x, vertices_[j].y);
  });
  for (std::size_t i = 1; i < used.size(); ++i)
    if (vertices_[used[i]] == vertices_[used[i - 1]])
      throw MeshError("vertices " + std::to_string(used[i - 1]) + " and " +
                      std::to_string(used[i]) + " coincide");
  const double tol = 1e-12 * std::max(extent, 1.0);
  for (const MeshEdge& e : edges_) {
    const Point p = vertices_[e.a], q = vertices_[e.b];
    const double lo = std::min(p.x, q.x) - tol, hi = std::max(p.x, q.x) + tol;
    auto first = std::lower_bound(used.begin(), used.end(), lo,
                                  [&](int v, double x) { return vertices_[v].x < x; });
    const double len = norm(q - p);
    for (auto it = first; it != used.end() && vertices_[*it].x <= hi; ++it) {
      const int v = *it;
      if (v == e.a || v == e.b)
        continue;
      const Point r = vertices_[v];
      const double s = dot(r - p, q - p) / (len * len);
      if (s <= 0 || s >= 1)
        continue;
      if (std::abs(cross(q - p, r - p)) / len <= tol)
        throw MeshError("vertex " + std::to_string(v) + " hangs on edge (" +
                        std::to_string(e.a) + "," + std::to_string(e.b) + ")");
    }
  }
}

MacroTriangle Triangulation::triangle(int t) const
{
  const auto& tri = triangles_.at(t);
  return MacroTriangle(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double Triangulation::mesh_size() const
{
  double h = 0.0;
  for (const MeshEdge& e : edges_)
    h = std::max(h, norm(vertices_[e.a] - vertices_[e.b]));
  return h;
}

int Triangulation::edge_index(int a, int b) const
{
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
    if ((edges_[i].a == a && edges_[i].b == b) || (edges_[i].a == b && edges_[i].b == a))
      return i;
  return -1;
}

Triangulation Triangulation::refine() const
{
  std::vector<Point> v = vertices_;
  std::map<std::pair<int, int>, int> mid;
  auto midpoint = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    const auto it = mid.find(key);
    if (it != mid.end())
      return it->second;
    v.push_back(0.5 * (vertices_[a] + vertices_[b]));
    return mid[key] = static_cast<int>(v.size()) - 1;
  };
  std::vector<std::array<int, 3>> t;
  t.reserve(4 * triangles_.size());
  for (const auto& tri : triangles_) {
    const int a = tri[0], b = tri[1], c = tri[2];
    const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
    t.push_back({a, ab, ca});
    t.push_back({ab, b, bc});
    t.push_back({ca, bc, c});
    t.push_back({ab, bc, ca});
  }
  return Triangulation(std::move(v), std::move(t));
}

Triangulation regular_hexagon(double radius)
{
  std::vector<Point> v = {{0, 0}};
  for (int k = 0; k < 6; ++k) {
    const double a = k * M_PI / 3;
    v.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  std::vector<std::array<int, 3>> t;
  for (int k = 0; k < 6; ++k)
    t.push_back({0, 1 + k, 1 + (k + 1) % 6});
  return Triangulation(std::move(v), std::move(t));
}

std::string to_string(FitMode m)
{
  switch (m) {
  case FitMode::independent:
    return "independent";
  case FitMode::c1:
    return "c1";
  case FitMode::c2:
    return "c2";
  }
  return "?";
}

FitMode parse_fit_mode(const std::string& s)
{
  if (s == "independent")
    return FitMode::independent;
  if (s == "c1")
    return FitMode::c1;
  if (s == "c2")
    return FitMode::c2;
  throw std::invalid_argument("unknown fit mode '" + s + "' (independent, c1, c2)");
}

std::vector<Barycentric> error_pattern(int n)
{
  // Kronecker sequence folded into the triangle.
  std::vector<Barycentric> out;
  out.reserve(n);
  const double g1 = 0.7548776662466927, g2 = 0.5698402909980532;
  for (int i = 0; i < n; ++i) {
    double a = std::fmod(0.5 + (i + 1) * g1, 1.0), b = std::fmod(0.5 + (i + 1) * g2, 1.0);
    if (a + b > 1) {
      a = 1 - a;
      b = 1 - b;
    }
    out.push_back({{1 - a - b, a, b}});
  }
  return out;
}

double max_error(const std::vector<SplineFunction>& pieces, const ScalarField& f,
                 int error_samples)
{
  const auto pattern = error_pattern(error_samples);
  double e = 0.0;
  const int n = static_cast<int>(pieces.size());
#pragma omp parallel for reduction(max : e) schedule(dynamic, 1)
  for (int t = 0; t < n; ++t)
    for (const auto& bc : pattern) {
      const Point p = pieces[t].basis().triangle().from_barycentric(bc);
      e = std::max(e, std::abs(f(p) - pieces[t](p)));
    }
  return e;
}

namespace
{
int corner_of(const MacroTriangle& t, Point p)
{
  const double tol = 1e-12 * t.diameter();
  for (int i = 0; i < 3; ++i)
    if (norm(t.vertex(i) - p) <= tol)
      return i;
  return -1;
}
} // namespace

void propagate_across(const SplineFunction& from, SplineFunction& to, int order)
{
  const MacroTriangle& t = from.basis().triangle();
  const MacroTriangle& u = to.basis().triangle();
  std::vector<int> la, lb;
  for (int i = 0; i < 3; ++i) {
    const int j = corner_of(u, t.vertex(i));
    if (j >= 0) {
      la.push_back(i);
      lb.push_back(j);
    }
  }
  if (la.size() != 2)
    throw std::invalid_argument("propagate_across: triangles must share exactly one edge");
  const int third_t = 3 - la[0] - la[1], third_u = 3 - lb[0] - lb[1];

  const MacroTriangle local(t.vertex(la[0]), t.vertex(la[1]), t.vertex(third_t));
  const Barycentric beta = barycentric(local, u.vertex(third_u));

  const OrderingMap of = ordering(from.basis(), la[0], la[1]);
  const OrderingMap ot = ordering(to.basis(), lb[0], lb[1]);
  BasisValues c;
  for (int k = 0; k < kBasisSize; ++k)
    c[k] = from.coeffs()[of.to_basis[k]];
  const PartialCoefficients forced = propagate(c, beta, order);
  for (int k = 0; k < kBasisSize; ++k)
    if (forced[k])
      to.coeffs()[ot.to_basis[k]] = *forced[k];
}

FitResult fit(const Triangulation& mesh, const ScalarField& f, FitMode mode,
              int error_samples)
{
  const int n = mesh.size();
  std::vector<std::optional<SplineFunction>> built(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < n; ++t)
    built[t].emplace(quasi_interpolant(instantiate(mesh.triangle(t)), f));

  FitResult r;
  r.mode = mode;
  for (auto& s : built)
    r.pieces.push_back(std::move(*s));

  // Breadth-first sweep of the dual graph.
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e = 0; e < static_cast<int>(mesh.edges().size()); ++e) {
    const MeshEdge& me = mesh.edges()[e];
    if (me.t1 >= 0) {
      adj[me.t0].push_back({me.t1, e});
      adj[me.t1].push_back({me.t0, e});
    }
  }
  std::vector<int> parent_edge(n, -2);
  std::vector<char> tree(mesh.edges().size(), 0);
  for (int seed = 0; seed < n; ++seed) {
    if (parent_edge[seed] != -2)
      continue;
    parent_edge[seed] = -1;
    std::queue<int> q;
    q.push(seed);
    while (!q.empty()) {
      const int t = q.front();
      q.pop();
      r.sweep.push_back(t);
      for (auto [u, e] : adj[t])
        if (parent_edge[u] == -2) {
          parent_edge[u] = e;
          tree[e] = 1;
          q.push(u);
        }
    }
  }

  if (mode != FitMode::independent) {
    const int order = mode == FitMode::c1 ? 1 : 2;
    for (int t : r.sweep) {
      const int e = parent_edge[t];
      if (e < 0)
        continue;
      const MeshEdge& me = mesh.edges()[e];
      const int p = me.t0 == t ? me.t1 : me.t0;
      propagate_across(r.pieces[p], r.pieces[t], order);
    }
  }

  std::vector<int> interior;
  for (int e = 0; e < static_cast<int>(mesh.edges().size()); ++e)
    if (mesh.edges()[e].t1 >= 0) {
      interior.push_back(e);
      if (!tree[e])
        r.unenforced_edges.push_back(e);
    }
  r.edges.resize(interior.size());
  const int ni = static_cast<int>(interior.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < ni; ++i) {
    const MeshEdge& me = mesh.edges()[interior[i]];
    r.edges[i] = {interior[i], tree[interior[i]] != 0,
                  verify_join(r.pieces[me.t0], r.pieces[me.t1], 2, 24)};
  }

  const auto pattern = error_pattern(error_samples);
  double emax = 0.0, esq = 0.0, fmax = 0.0;
#pragma omp parallel for reduction(max : emax, fmax) reduction(+ : esq) schedule(dynamic, 1)
  for (int t = 0; t < n; ++t)
    for (const auto& bc : pattern) {
      const Point p = r.pieces[t].basis().triangle().from_barycentric(bc);
      const double fv = f(p), e = std::abs(fv - r.pieces[t](p));
      emax = std::max(emax, e);
      fmax = std::max(fmax, std::abs(fv));
      esq += e * e;
    }
  r.max_error = emax;
  r.rms_error = std::sqrt(esq / (double(n) * pattern.size()));
  r.scale = fmax;
  return r;
}

std::vector<ConvergenceRow> convergence_study(const ScalarField& f,
                                              const Triangulation& base, int levels,
                                              int error_samples)
{
  if (levels < 3)
    throw std::invalid_argument("convergence_study: need at least 3 levels");
  std::vector<ConvergenceRow> rows;
  Triangulation mesh = base;
  double fscale = 0.0;
  for (int level = 0; level < levels; ++level) {
    if (level > 0)
      mesh = mesh.refine();
    std::vector<SplineFunction> pieces;
    std::vector<std::optional<SplineFunction>> built(mesh.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < mesh.size(); ++t)
      built[t].emplace(quasi_interpolant(instantiate(mesh.triangle(t)), f));
    for (auto& s : built)
      pieces.push_back(std::move(*s));
    const double e = max_error(pieces, f, error_samples);
    for (const auto& bc : error_pattern(error_samples))
      fscale = std::max(fscale, std::abs(f(mesh.triangle(0).from_barycentric(bc))));

    ConvergenceRow row{level, mesh.size(), mesh.mesh_size(), e, std::nullopt,
                       e <= 1e-11 * std::max(1.0, fscale)};
    if (!rows.empty() && !row.exact && !rows.back().exact)
      row.order = std::log2(rows.back().error / e);
    rows.push_back(row);
  }
  return rows;
}

} // namespace ps12
