#include "ps12/io.hpp"

#include "ps12/kernels.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace ps12
{

Triangulation read_mesh_json(std::istream& in)
{
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw MeshError(std::string("mesh JSON: ") + e.what());
  }
  try {
    std::vector<Point> v;
    for (const auto& p : j.at("vertices")) {
      if (p.size() < 2)
        throw MeshError("mesh JSON: a vertex needs two coordinates");
      v.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    std::vector<std::array<int, 3>> t;
    for (const auto& f : j.at("triangles")) {
      if (f.size() != 3)
        throw MeshError("mesh JSON: triangles need exactly three indices");
      t.push_back({f.at(0).get<int>(), f.at(1).get<int>(), f.at(2).get<int>()});
    }
    return Triangulation(std::move(v), std::move(t));
  } catch (const nlohmann::json::exception& e) {
    throw MeshError(std::string("mesh JSON: ") + e.what());
  }
}

namespace
{
// Next whitespace-separated token, skipping '#' comments.
class Tokens
{
public:
  explicit Tokens(std::istream& in) : in_(in) {}
  bool next(std::string& tok)
  {
    while (true) {
      if (ls_ >> tok) {
        if (tok[0] == '#') {
          ls_.setstate(std::ios::eofbit);
          continue;
        }
        return true;
      }
      std::string line;
      if (!std::getline(in_, line))
        return false;
      ls_.clear();
      ls_.str(line);
    }
  }
  template <class T> T get(const char* what)
  {
    std::string tok;
    if (!next(tok))
      throw MeshError(std::string("OFF: unexpected end of file reading ") + what);
    std::istringstream s(tok);
    T v;
    if (!(s >> v) || !s.eof())
      throw MeshError(std::string("OFF: bad ") + what + " '" + tok + "'");
    return v;
  }

private:
  std::istream& in_;
  std::istringstream ls_;
};
} // namespace

Triangulation read_mesh_off(std::istream& in)
{
  Tokens tok(in);
  std::string head;
  if (!tok.next(head) || head != "OFF")
    throw MeshError("OFF: missing OFF header");
  const long nv = tok.get<long>("vertex count");
  const long nf = tok.get<long>("face count");
  tok.get<long>("edge count");
  if (nv < 0 || nf < 0)
    throw MeshError("OFF: negative counts");
  std::vector<Point> v;
  for (long i = 0; i < nv; ++i) {
    const double x = tok.get<double>("coordinate"), y = tok.get<double>("coordinate");
    tok.get<double>("coordinate");
    v.push_back({x, y});
  }
  std::vector<std::array<int, 3>> t;
  for (long i = 0; i < nf; ++i) {
    if (tok.get<int>("face size") != 3)
      throw MeshError("OFF: only triangular faces are supported");
    const int a = tok.get<int>("index"), b = tok.get<int>("index"), c = tok.get<int>("index");
    t.push_back({a, b, c});
  }
  return Triangulation(std::move(v), std::move(t));
}

Triangulation load_mesh(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open mesh file " + path.string());
  const std::string ext = path.extension().string();
  if (ext == ".json")
    return read_mesh_json(in);
  if (ext == ".off")
    return read_mesh_off(in);
  std::string first;
  in >> first;
  in.clear();
  in.seekg(0);
  return first == "OFF" ? read_mesh_off(in) : read_mesh_json(in);
}

void write_coefficients_csv(std::ostream& out, const std::vector<SplineFunction>& pieces)
{
  out << "triangle,index,value\n" << std::setprecision(17);
  for (std::size_t t = 0; t < pieces.size(); ++t)
    for (int j = 0; j < kBasisSize; ++j)
      out << t << ',' << j << ',' << pieces[t].coeffs()[j] << '\n';
}

namespace
{
std::vector<std::string> split_csv(const std::string& line)
{
  std::vector<std::string> out;
  std::string cell;
  std::istringstream s(line);
  while (std::getline(s, cell, ','))
    out.push_back(cell);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  for (auto& c : out) {
    const auto b = c.find_first_not_of(" \t\r");
    const auto e = c.find_last_not_of(" \t\r");
    c = b == std::string::npos ? "" : c.substr(b, e - b + 1);
  }
  return out;
}

template <class T> bool parse_number(const std::string& s, T& v)
{
  std::istringstream in(s);
  return (in >> v) && in.eof();
}
} // namespace

std::vector<BasisValues> read_coefficients_csv(std::istream& in, int triangles)
{
  std::vector<BasisValues> c(triangles);
  std::vector<std::array<char, kBasisSize>> seen(triangles);
  for (auto& s : seen)
    s.fill(0);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto cells = split_csv(line);
    if (lineno == 1 && !cells.empty() && cells[0] == "triangle")
      continue;
    int t, j;
    double v;
    if (cells.size() != 3 || !parse_number(cells[0], t) || !parse_number(cells[1], j) ||
        !parse_number(cells[2], v))
      throw MeshError("coefficients line " + std::to_string(lineno) + ": expected triangle,index,value");
    if (t < 0 || t >= triangles || j < 0 || j >= kBasisSize)
      throw MeshError("coefficients line " + std::to_string(lineno) + ": index out of range");
    c[t][j] = v;
    seen[t][j] = 1;
  }
  for (int t = 0; t < triangles; ++t)
    for (int j = 0; j < kBasisSize; ++j)
      if (!seen[t][j])
        throw MeshError("coefficients: missing entry for triangle " + std::to_string(t) +
                        ", index " + std::to_string(j));
  return c;
}

std::vector<Point> read_points_csv(std::istream& in)
{
  std::vector<Point> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto cells = split_csv(line);
    if (lineno == 1 && !cells.empty() && cells[0] == "x")
      continue;
    Point p;
    if (cells.size() != 2 || !parse_number(cells[0], p.x) || !parse_number(cells[1], p.y))
      throw MeshError("points line " + std::to_string(lineno) + ": expected x,y");
    out.push_back(p);
  }
  return out;
}

ObjMesh surface_mesh(const std::vector<SplineFunction>& pieces, int resolution)
{
  if (resolution < 1)
    throw std::invalid_argument("resolution must be at least 1");
  const int r = resolution;
  ObjMesh m;
  for (const auto& s : pieces) {
    const SplitSites& sites = s.basis().sites();
    std::vector<Point> pts;
    std::vector<int> base;
    for (const auto& sub : sites.sub) {
      const Point a = sites.v[sub[0]], b = sites.v[sub[1]], c = sites.v[sub[2]];
      base.push_back(static_cast<int>(m.vertices.size() + pts.size()));
      for (int i = 0; i <= r; ++i)
        for (int j = 0; i + j <= r; ++j)
          pts.push_back(a + (double(i) / r) * (b - a) + (double(j) / r) * (c - a));
    }
    const std::vector<double> z = kernels::evaluate_parallel(s, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
      m.vertices.push_back({pts[i].x, pts[i].y, z[i]});

    // Row-major index of (i, j) within one subtriangle's grid.
    auto id = [r](int i, int j) { return i * (r + 1) - i * (i - 1) / 2 + j; };
    const bool flip = !s.basis().triangle().counterclockwise();
    for (int b0 : base)
      for (int i = 0; i < r; ++i)
        for (int j = 0; i + j < r; ++j) {
          std::vector<int> f = {b0 + id(i, j), b0 + id(i + 1, j), b0 + id(i, j + 1)};
          if (flip)
            std::swap(f[1], f[2]);
          m.faces.push_back(f);
          if (i + j + 1 < r) {
            std::vector<int> g = {b0 + id(i + 1, j), b0 + id(i + 1, j + 1), b0 + id(i, j + 1)};
            if (flip)
              std::swap(g[1], g[2]);
            m.faces.push_back(g);
          }
        }
  }
  return m;
}

ObjMesh split_wireframe(const std::vector<SplineFunction>& pieces, int resolution)
{
  if (resolution < 1)
    throw std::invalid_argument("resolution must be at least 1");
  ObjMesh m;
  for (const auto& s : pieces) {
    const SplitSites& sites = s.basis().sites();
    std::set<std::pair<int, int>> segs;
    for (const auto& sub : sites.sub)
      for (int i = 0; i < 3; ++i)
        segs.insert(std::minmax(sub[i], sub[(i + 1) % 3]));
    for (auto [a, b] : segs) {
      std::vector<Point> pts;
      for (int k = 0; k <= resolution; ++k)
        pts.push_back(sites.v[a] + (double(k) / resolution) * (sites.v[b] - sites.v[a]));
      const std::vector<double> z = kernels::evaluate_serial(s, pts);
      std::vector<int> line;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        line.push_back(static_cast<int>(m.vertices.size()));
        m.vertices.push_back({pts[k].x, pts[k].y, z[k]});
      }
      m.lines.push_back(line);
    }
  }
  return m;
}

const std::vector<std::vector<int>>& control_net_cells()
{
  static const std::vector<std::vector<int>> cells = [] {
    // Equilateral reference: x = 2 b2 + b3, y = sqrt(3) b3. Every predicate
    // below is sqrt(3) times an integer expression in (x, b3), so the
    // factor is dropped and the arithmetic stays exact.
    const auto& layout = canonical_domain_layout();
    std::vector<std::array<std::int64_t, 2>> p;
    for (const auto& d : layout)
      p.push_back({2 * d[1] + d[2], d[2]});
    auto orient3 = [&](int a, int b, int c) {
      return (p[b][0] - p[a][0]) * (p[c][1] - p[a][1]) -
             (p[b][1] - p[a][1]) * (p[c][0] - p[a][0]);
    };
    auto lift = [&](int a) { return p[a][0] * p[a][0] + 3 * p[a][1] * p[a][1]; };
    auto incircle = [&](int a, int b, int c, int d) {
      const std::int64_t m[3][3] = {
          {p[a][0] - p[d][0], p[a][1] - p[d][1], lift(a) - lift(d)},
          {p[b][0] - p[d][0], p[b][1] - p[d][1], lift(b) - lift(d)},
          {p[c][0] - p[d][0], p[c][1] - p[d][1], lift(c) - lift(d)}};
      const std::int64_t det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      return orient3(a, b, c) > 0 ? det : -det;
    };

    const int n = kBasisSize;
    std::set<std::vector<int>> found;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          if (orient3(i, j, k) == 0)
            continue;
          std::vector<int> on = {i, j, k};
          bool empty = true;
          for (int l = 0; l < n && empty; ++l) {
            if (l == i || l == j || l == k)
              continue;
            const std::int64_t s = incircle(i, j, k, l);
            if (s > 0)
              empty = false;
            else if (s == 0)
              on.push_back(l);
          }
          if (empty) {
            std::sort(on.begin(), on.end());
            found.insert(on);
          }
        }

    std::vector<std::vector<int>> out;
    for (auto cell : found) {
      double cx = 0, cy = 0;
      for (int v : cell) {
        cx += p[v][0];
        cy += std::sqrt(3.0) * p[v][1];
      }
      cx /= cell.size();
      cy /= cell.size();
      std::sort(cell.begin(), cell.end(), [&](int a, int b) {
        return std::atan2(std::sqrt(3.0) * p[a][1] - cy, p[a][0] - cx) <
               std::atan2(std::sqrt(3.0) * p[b][1] - cy, p[b][0] - cx);
      });
      out.push_back(cell);
    }
    return out;
  }();
  return cells;
}

ObjMesh control_net(const std::vector<SplineFunction>& pieces)
{
  ObjMesh m;
  for (const auto& s : pieces) {
    const int base = static_cast<int>(m.vertices.size());
    const DomainPointSet xi = domain_points(s.basis());
    for (int j = 0; j < kBasisSize; ++j)
      m.vertices.push_back({xi[j].x, xi[j].y, s.coeffs()[j]});
    const OrderingMap om = ordering(s.basis(), 0, 1);
    const bool flip = !s.basis().triangle().counterclockwise();
    for (const auto& cell : control_net_cells()) {
      std::vector<int> f;
      for (int v : cell)
        f.push_back(base + om.to_basis[v]);
      if (flip)
        std::reverse(f.begin(), f.end());
      m.faces.push_back(f);
    }
  }
  return m;
}

void write_obj(std::ostream& out, const ObjMesh& mesh, const std::string& comment)
{
  if (!comment.empty())
    out << "# " << comment << '\n';
  out << std::setprecision(12);
  for (const auto& v : mesh.vertices)
    out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& f : mesh.faces) {
    out << 'f';
    for (int i : f)
      out << ' ' << i + 1;
    out << '\n';
  }
  for (const auto& l : mesh.lines) {
    out << 'l';
    for (int i : l)
      out << ' ' << i + 1;
    out << '\n';
  }
}

void write_vertices_csv(std::ostream& out, const ObjMesh& mesh)
{
  out << "x,y,value\n" << std::setprecision(15);
  for (const auto& v : mesh.vertices)
    out << v[0] << ',' << v[1] << ',' << v[2] << '\n';
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body)
{
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path.string());
  body(out);
  out.flush();
  if (!out)
    throw IoError("error while writing " + path.string());
}

} // namespace ps12
