#include "ps12/classify.hpp"

#include "ps12/basis.hpp"
#include "ps12/simplex_spline.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>

namespace ps12
{

const std::array<KnotLine, 9>& knot_lines()
{
  static const std::array<KnotLine, 9> lines = {{
      {LineKind::boundary, {0, 3, 1}, "{1,4,2}"},
      {LineKind::boundary, {1, 4, 2}, "{2,5,3}"},
      {LineKind::boundary, {2, 5, 0}, "{3,6,1}"},
      {LineKind::medial, {3, 4}, "{4,5}"},
      {LineKind::medial, {4, 5}, "{5,6}"},
      {LineKind::medial, {5, 3}, "{6,4}"},
      {LineKind::median, {0, 4}, "{1,5}"},
      {LineKind::median, {1, 5}, "{2,6}"},
      {LineKind::median, {2, 3}, "{3,4}"},
  }};
  return lines;
}

namespace
{
void require_total(const MultiplicityVector& m)
{
  if (m.total() != 8)
    throw std::invalid_argument("multiplicity vector must have 8 knots: " + m.label());
  for (int i = 0; i < 6; ++i)
    if (m[i] < 0)
      throw std::invalid_argument("negative multiplicity: " + m.label());
}

bool all_collinear(const MultiplicityVector& m)
{
  // The six primary sites are collinear in triples only along the edges.
  for (int e = 0; e < 3; ++e) {
    int on = 0;
    for (int s : knot_lines()[e].sites)
      on += m[s];
    if (on == 8)
      return true;
  }
  // Two distinct sites are always collinear.
  int distinct = 0;
  for (int i = 0; i < 6; ++i)
    distinct += m[i] > 0;
  return distinct <= 2;
}

// Consecutive 7-knot windows of {0^6, 1/2^2, 1^6} as (start, mid, end).
bool is_edge_window(int a, int mid, int b)
{
  static const std::set<std::array<int, 3>> windows = {
      {6, 1, 0}, {5, 2, 0}, {4, 2, 1}, {3, 2, 2},
      {2, 2, 3}, {1, 2, 4}, {0, 2, 5}, {0, 1, 6}};
  return windows.count({a, mid, b}) > 0;
}
} // namespace

std::array<LineSmoothness, 9> smoothness_class(const MultiplicityVector& m)
{
  require_total(m);
  if (all_collinear(m))
    throw std::invalid_argument("all knots collinear: " + m.label());
  std::array<LineSmoothness, 9> out;
  for (int l = 0; l < 9; ++l) {
    int distinct = 0;
    for (int s : knot_lines()[l].sites) {
      out[l].mu += m[s];
      distinct += m[s] > 0;
    }
    out[l].active = distinct >= 2;
    if (out[l].active)
      out[l].exponent = 6 - out[l].mu;
  }
  return out;
}

Verdict is_admissible(const MultiplicityVector& m)
{
  require_total(m);
  if (all_collinear(m))
    return {false, "all knots collinear"};
  const auto cls = smoothness_class(m);
  for (int l = 3; l < 9; ++l)
    if (cls[l].active && cls[l].mu > 3)
      return {false, "interior line " + knot_lines()[l].name + " has mu = " +
                         std::to_string(cls[l].mu) + ", only C" +
                         std::to_string(*cls[l].exponent)};
  for (int e = 0; e < 3; ++e) {
    const auto& s = knot_lines()[e].sites;
    if (cls[e].mu <= 6)
      continue;
    if (!is_edge_window(m[s[0]], m[s[1]], m[s[2]]))
      return {false, "edge " + knot_lines()[e].name + " pattern (" +
                         std::to_string(m[s[0]]) + "," + std::to_string(m[s[1]]) + "," +
                         std::to_string(m[s[2]]) + ") is not a window of the edge knots"};
  }
  return {true, "C3 inside, boundary restrictions zero or edge B-splines"};
}

namespace
{
double spline_max(const SimplexSpline& s)
{
  // Fine barycentric grid, approached from inside.
  const MacroTriangle& t = s.sites().triangle;
  double m = 0.0;
  const int n = 24;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      const Point p = t.from_barycentric({{double(n - i - j) / n, double(i) / n, double(j) / n}});
      m = std::max(m, std::abs(eval_M(s, p)));
    }
  return m;
}
} // namespace

NumericVerdict numeric_admissibility(const SplitSites& sites, const MultiplicityVector& m,
                                     int samples)
{
  require_total(m);
  const SimplexSpline s(sites, m);
  const double smax = spline_max(s);
  const double diam = sites.triangle.diameter();
  constexpr double tol = 1e-7;

  NumericVerdict v;
  v.interior_c3 = true;
  for (int l = 3; l < 9; ++l) {
    // Medial edges and medians both end at sites on the boundary.
    const Point a = sites.v[knot_lines()[l].sites[0]], b = sites.v[knot_lines()[l].sites[1]];
    const Point d = b - a;
    const Point n = Point{-d.y, d.x} / norm(d);
    for (int i = 0; i < samples; ++i) {
      // Irrational offsets keep samples off the other split lines.
      const double t = 0.03 + 0.94 * std::fmod((i + 0.5) * 0.6180339887498949, 1.0);
      const Point p = a + t * d;
      std::vector<Point> dirs;
      for (int k = 0; k <= 3; ++k) {
        const double plus = eval_derivs(s, dirs, p, approach_along(n));
        const double minus = eval_derivs(s, dirs, p, approach_along(-n));
        const double rel = std::abs(plus - minus) / (smax / std::pow(diam, k));
        if (rel > v.max_jump)
          v.max_jump = rel;
        if (rel > tol && v.interior_c3) {
          v.interior_c3 = false;
          v.reason = "order-" + std::to_string(k) + " jump across " + knot_lines()[l].name;
        }
        dirs.push_back(n);
      }
    }
  }

  v.boundary_ok = true;
  const auto& windows = edge_bspline_knots();
  for (int e = 0; e < 3; ++e) {
    const EdgeRestriction r = restrict_to_edge(s, e, (e + 1) % 3);
    std::vector<double> ts, rs;
    for (int i = 0; i < 64; ++i) {
      ts.push_back((i + 0.5) / 64);
      rs.push_back(r(ts.back()));
    }
    double rmax = 0.0;
    for (double x : rs)
      rmax = std::max(rmax, std::abs(x));
    double best = rmax;
    if (rmax > tol * smax) {
      for (const auto& w : windows) {
        double num = 0.0, den = 0.0;
        std::vector<double> bs;
        for (double t : ts) {
          bs.push_back(univariate_bspline(w, t));
          num += rs[bs.size() - 1] * bs.back();
          den += bs.back() * bs.back();
        }
        if (den == 0.0)
          continue;
        const double c = num / den;
        double err = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i)
          err = std::max(err, std::abs(rs[i] - c * bs[i]));
        best = std::min(best, err);
      }
    }
    const double rel = best / smax;
    v.max_edge_error = std::max(v.max_edge_error, rel);
    if (rel > tol && v.boundary_ok) {
      v.boundary_ok = false;
      if (v.reason.empty())
        v.reason = "restriction to edge " + knot_lines()[e].name +
                   " is neither zero nor an edge B-spline";
    }
  }
  if (v.admissible())
    v.reason = "C3 inside, boundary restrictions zero or edge B-splines";
  return v;
}

std::vector<MultiplicityVector> enumerate_candidates()
{
  std::vector<MultiplicityVector> out;
  MultiplicityVector m;
  for (m[0] = 0; m[0] <= 8; ++m[0])
    for (m[1] = 0; m[0] + m[1] <= 8; ++m[1])
      for (m[2] = 0; m[0] + m[1] + m[2] <= 8; ++m[2])
        for (m[3] = 0; m[0] + m[1] + m[2] + m[3] <= 8; ++m[3])
          for (m[4] = 0; m[0] + m[1] + m[2] + m[3] + m[4] <= 8; ++m[4]) {
            m[5] = 8 - m[0] - m[1] - m[2] - m[3] - m[4];
            out.push_back(m);
          }
  return out;
}

MultiplicityVector orbit_representative(const MultiplicityVector& m)
{
  MultiplicityVector best = m;
  for (const auto& sigma : Permutation::all())
    best = std::min(best, act(sigma, m));
  return best;
}

std::vector<MultiplicityVector> admissible_list()
{
  std::set<MultiplicityVector> reps;
  for (const auto& m : enumerate_candidates())
    if (is_admissible(m).admissible)
      reps.insert(orbit_representative(m));
  return {reps.begin(), reps.end()};
}

CrossCheck cross_check(const SplitSites& sites, int samples)
{
  const auto all = enumerate_candidates();
  std::set<MultiplicityVector> reps;
  for (const auto& m : all)
    if (!all_collinear(m))
      reps.insert(orbit_representative(m));
  const std::vector<MultiplicityVector> list(reps.begin(), reps.end());

  CrossCheck out;
  out.candidates = static_cast<int>(all.size());
  out.orbits = static_cast<int>(list.size());
  std::mutex mu;
  const int n = out.orbits;
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    const Verdict c = is_admissible(list[i]);
    const NumericVerdict v = numeric_admissibility(sites, list[i], samples);
    std::lock_guard<std::mutex> lock(mu);
    if (c.admissible)
      ++out.admissible_orbits;
    if (c.admissible != v.admissible())
      out.disagreements.push_back(list[i].label() + ": rule says " +
                                  (c.admissible ? "yes" : "no") + " (" + c.reason +
                                  "), sampling says " + (v.admissible() ? "yes" : "no") +
                                  " (" + v.reason + ")");
  }
  std::sort(out.disagreements.begin(), out.disagreements.end());
  return out;
}

} // namespace ps12
