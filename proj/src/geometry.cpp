#include "ps12/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace ps12
{

namespace
{
int sign_of(double v) { return (v > 0) - (v < 0); }

// Sign of orient(a, b, p + e*primary + e^2*secondary) for e -> 0+.
int perturbed_side(Point a, Point b, Point p, const Approach& ap, double tol)
{
  const double o = orient(a, b, p);
  if (std::abs(o) > tol)
    return sign_of(o);
  const Point e = b - a;
  const double scale = norm(e);
  const double s1 = cross(e, ap.primary);
  if (std::abs(s1) > 1e-12 * scale * norm(ap.primary))
    return sign_of(s1);
  return sign_of(cross(e, ap.secondary));
}
} // namespace

MacroTriangle::MacroTriangle(Point v1, Point v2, Point v3)
    : v_{v1, v2, v3}, signed_area_(0.5 * orient(v1, v2, v3))
{
  const double d = diameter();
  if (!(d > 0) || std::abs(signed_area_) <= 1e-14 * d * d)
    throw std::invalid_argument("MacroTriangle: degenerate triangle");
}

double MacroTriangle::diameter() const
{
  return std::max({norm(v_[1] - v_[0]), norm(v_[2] - v_[1]),
                   norm(v_[0] - v_[2])});
}

Point MacroTriangle::from_barycentric(const Barycentric& b) const
{
  return b[0] * v_[0] + b[1] * v_[1] + b[2] * v_[2];
}

double SplitSites::orient_tol() const
{
  const double d = triangle.diameter();
  return 1e-12 * d * d;
}

SplitSites build_sites(const MacroTriangle& t)
{
  const auto& c = t.vertices();
  std::array<Point, kNumSites> v;
  v[0] = c[0];
  v[1] = c[1];
  v[2] = c[2];
  v[3] = 0.5 * (c[0] + c[1]);
  v[4] = 0.5 * (c[1] + c[2]);
  v[5] = 0.5 * (c[2] + c[0]);
  v[6] = 0.5 * (v[3] + v[4]);
  v[7] = 0.5 * (v[4] + v[5]);
  v[8] = 0.5 * (v[5] + v[3]);
  v[9] = (c[0] + c[1] + c[2]) / 3.0;

  // Corner regions are halved by the medians; the medial triangle is cut
  // into six around the barycenter. All triples share the winding of t.
  const std::array<std::array<int, 3>, kNumSubtriangles> sub = {{
      {0, 3, 8},
      {0, 8, 5},
      {1, 4, 6},
      {1, 6, 3},
      {2, 5, 7},
      {2, 7, 4},
      {3, 6, 9},
      {6, 4, 9},
      {4, 7, 9},
      {7, 5, 9},
      {5, 8, 9},
      {8, 3, 9},
  }};
  return SplitSites{t, v, sub};
}

Barycentric barycentric(const MacroTriangle& t, Point p)
{
  const auto& v = t.vertices();
  const double twice = 2.0 * t.signed_area();
  Barycentric b;
  b[0] = orient(p, v[1], v[2]) / twice;
  b[1] = orient(v[0], p, v[2]) / twice;
  b[2] = 1.0 - b[0] - b[1];
  return b;
}

Approach approach_along(Point dir)
{
  return {dir, {-dir.y, dir.x}};
}

Approach approach_from_inside(const SplitSites& s, Point p)
{
  Point d = s.v[9] - p;
  if (norm(d) <= 1e-12 * s.triangle.diameter())
    d = Point{0.8, 0.6};
  return approach_along(d);
}

bool inside_open(Point p0, Point p1, Point p2, Point p, const Approach& a,
                 double tol)
{
  const int w = sign_of(orient(p0, p1, p2));
  return perturbed_side(p0, p1, p, a, tol) == w &&
         perturbed_side(p1, p2, p, a, tol) == w &&
         perturbed_side(p2, p0, p, a, tol) == w;
}

int locate(const SplitSites& s, Point p)
{
  const Barycentric b = barycentric(s.triangle, p);
  constexpr double eps = 1e-12;
  if (b[0] < -eps || b[1] < -eps || b[2] < -eps)
    throw std::out_of_range("locate: point outside the macrotriangle");
  const Approach ap = approach_from_inside(s, p);
  const double tol = s.orient_tol();
  for (int k = 0; k < kNumSubtriangles; ++k) {
    const auto& t = s.sub[k];
    if (inside_open(s.v[t[0]], s.v[t[1]], s.v[t[2]], p, ap, tol))
      return k;
  }
  // Unreachable for points of the closed triangle.
  throw std::logic_error("locate: no subtriangle found");
}

int MultiplicityVector::total() const
{
  int s = 0;
  for (int v : m)
    s += v;
  return s;
}

std::string MultiplicityVector::label() const
{
  std::string out;
  for (int v : m) {
    if (v < 0 || v > 9)
      throw std::domain_error("MultiplicityVector: digit out of range");
    out.push_back(static_cast<char>('0' + v));
  }
  return out;
}

MultiplicityVector MultiplicityVector::parse(std::string_view label)
{
  if (label.size() != 6)
    throw std::invalid_argument("multiplicity label must have 6 digits");
  MultiplicityVector r;
  for (int i = 0; i < 6; ++i) {
    const char c = label[i];
    if (c < '0' || c > '9')
      throw std::invalid_argument("multiplicity label must be decimal digits");
    r.m[i] = c - '0';
  }
  return r;
}

SiteCounts to_site_counts(const MultiplicityVector& m)
{
  SiteCounts c{};
  for (int i = 0; i < 6; ++i)
    c[i] = m[i];
  return c;
}

int Permutation::site(int s) const
{
  // Midpoint sites indexed by the unordered corner pair they bisect.
  static constexpr int mid_of[3][3] = {{-1, 3, 5}, {3, -1, 4}, {5, 4, -1}};
  // Medial-edge midpoints indexed by the pair of midpoints they bisect.
  static constexpr int medial_of[6][6] = {
      {-1, -1, -1, -1, -1, -1}, {-1, -1, -1, -1, -1, -1},
      {-1, -1, -1, -1, -1, -1}, {-1, -1, -1, -1, 6, 8},
      {-1, -1, -1, 6, -1, 7},   {-1, -1, -1, 8, 7, -1}};
  static constexpr int mid_pair[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  static constexpr int medial_pair[3][2] = {{3, 4}, {4, 5}, {5, 3}};

  if (s < 3)
    return p_[s];
  if (s < 6) {
    const auto& pr = mid_pair[s - 3];
    return mid_of[p_[pr[0]]][p_[pr[1]]];
  }
  if (s < 9) {
    const auto& pr = medial_pair[s - 6];
    return medial_of[site(pr[0])][site(pr[1])];
  }
  return 9;
}

Permutation Permutation::inverse() const
{
  std::array<int, 3> q{};
  for (int i = 0; i < 3; ++i)
    q[p_[i]] = i;
  return Permutation(q);
}

Permutation Permutation::operator*(const Permutation& other) const
{
  return Permutation({p_[other.p_[0]], p_[other.p_[1]], p_[other.p_[2]]});
}

const std::array<Permutation, 6>& Permutation::all()
{
  static const std::array<Permutation, 6> elems = {
      Permutation({0, 1, 2}), Permutation({1, 0, 2}), Permutation({0, 2, 1}),
      Permutation({2, 1, 0}), Permutation({1, 2, 0}), Permutation({2, 0, 1})};
  return elems;
}

MultiplicityVector act(const Permutation& sigma, const MultiplicityVector& m)
{
  MultiplicityVector r;
  for (int i = 0; i < 6; ++i)
    r.m[sigma.site(i)] = m.m[i];
  return r;
}

Point act(const Permutation& sigma, const MacroTriangle& t, Point p)
{
  const Barycentric b = barycentric(t, p);
  Barycentric r;
  for (int i = 0; i < 3; ++i)
    r[sigma(i)] = b[i];
  return t.from_barycentric(r);
}

} // namespace ps12
