#include "ps12/simplex_spline.hpp"

#include "ps12/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ps12
{

namespace
{

struct Pivot
{
  int a = -1;
  int b = -1;
  int c = -1;
  bool ok() const { return a >= 0; }
};

Pivot choose_pivot(const SplitSites& s, const SiteCounts& k, PivotRule rule,
                   double tol)
{
  std::array<int, kNumSites> idx{};
  int m = 0;
  for (int i = 0; i < kNumSites; ++i)
    if (k[i] > 0)
      idx[m++] = i;

  Pivot best;
  double best_area = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int l = j + 1; l < m; ++l) {
        const double area =
            std::abs(orient(s.v[idx[i]], s.v[idx[j]], s.v[idx[l]]));
        if (area <= tol)
          continue;
        switch (rule) {
        case PivotRule::max_area:
          if (area > best_area) {
            best_area = area;
            best = {idx[i], idx[j], idx[l]};
          }
          break;
        case PivotRule::first_valid:
          return {idx[i], idx[j], idx[l]};
        case PivotRule::last_valid:
          best = {idx[i], idx[j], idx[l]};
          break;
        }
      }
  return best;
}

std::uint64_t pack(const SiteCounts& k, int dirs_left)
{
  std::uint64_t key = 0;
  for (int i = 0; i < kNumSites; ++i)
    key |= static_cast<std::uint64_t>(k[i]) << (4 * i);
  return key | (static_cast<std::uint64_t>(dirs_left) << 40);
}

int count_knots(const SiteCounts& k)
{
  int n = 0;
  for (int v : k) {
    if (v < 0 || v > 15)
      throw std::invalid_argument("simplex spline: knot multiplicity out of range");
    n += v;
  }
  return n;
}

} // namespace

SimplexSpline::SimplexSpline(SplitSites sites, SiteCounts knots, double alpha)
    : sites_(std::move(sites)), knots_(knots), num_knots_(count_knots(knots)),
      alpha_(alpha)
{
  if (num_knots_ < 3)
    throw std::invalid_argument("simplex spline: needs at least 3 knots");
  if (!(alpha_ > 0))
    throw std::invalid_argument("simplex spline: alpha must be positive");
  if (!choose_pivot(sites_, knots_, PivotRule::first_valid,
                    sites_.orient_tol())
           .ok())
    throw std::invalid_argument("simplex spline: degenerate (collinear) knots");
}

SimplexSpline::SimplexSpline(SplitSites sites, const MultiplicityVector& m,
                             double alpha)
    : SimplexSpline(std::move(sites), to_site_counts(m), alpha)
{
}

SimplexSpline SimplexSpline::with_alpha(double alpha) const
{
  return SimplexSpline(sites_, knots_, alpha);
}

std::vector<Point> SimplexSpline::knot_points() const
{
  std::vector<Point> out;
  for (int i = 0; i < kNumSites; ++i)
    for (int r = 0; r < knots_[i]; ++r)
      out.push_back(sites_.v[i]);
  return out;
}

SimplexEvaluator::SimplexEvaluator(const SplitSites& sites, Point p,
                                   const Approach& approach,
                                   std::span<const Point> directions,
                                   PivotRule rule)
    : sites_(sites), p_(p), approach_(approach),
      dirs_(directions.begin(), directions.end()), rule_(rule),
      tol_(sites.orient_tol())
{
  memo_.reserve(256);
}

double SimplexEvaluator::unit(const SiteCounts& k)
{
  return eval(k, count_knots(k), static_cast<int>(dirs_.size()));
}

double SimplexEvaluator::eval(const SiteCounts& k, int n, int dirs_left)
{
  const std::uint64_t key = pack(k, dirs_left);
  if (auto it = memo_.find(key); it != memo_.end())
    return it->second;

  double result = 0.0;
  const Pivot pv = choose_pivot(sites_, k, rule_, tol_);
  if (pv.ok()) {
    const Point a = sites_.v[pv.a];
    const Point b = sites_.v[pv.b];
    const Point c = sites_.v[pv.c];
    const double det = cross(b - a, c - a);
    const std::array<int, 3> which = {pv.a, pv.b, pv.c};

    if (n == 3) {
      if (dirs_left == 0 && inside_open(a, b, c, p_, approach_, tol_))
        result = 2.0 / std::abs(det);
    } else {
      std::array<double, 3> w{};
      double factor;
      if (dirs_left > 0) {
        const Point u = dirs_[dirs_.size() - dirs_left];
        w[1] = cross(u, c - a) / det;
        w[2] = cross(b - a, u) / det;
        w[0] = -w[1] - w[2];
        factor = n - 1;
      } else {
        const Point q = p_ - a;
        w[1] = cross(q, c - a) / det;
        w[2] = cross(b - a, q) / det;
        w[0] = 1.0 - w[1] - w[2];
        factor = double(n - 1) / double(n - 3);
      }
      const int next_dirs = dirs_left > 0 ? dirs_left - 1 : 0;
      double sum = 0.0;
      for (int i = 0; i < 3; ++i) {
        if (w[i] == 0.0)
          continue;
        SiteCounts sub = k;
        --sub[which[i]];
        sum += w[i] * eval(sub, n - 1, next_dirs);
      }
      result = factor * sum;
    }
  }
  memo_.emplace(key, result);
  return result;
}

double eval_M(const SimplexSpline& s, Point p, PivotRule rule)
{
  return eval_M(s, p, approach_from_inside(s.sites(), p), rule);
}

double eval_M(const SimplexSpline& s, Point p, const Approach& approach,
              PivotRule rule)
{
  SimplexEvaluator ev(s.sites(), p, approach, {}, rule);
  return s.alpha() * ev.unit(s.knots());
}

double eval_deriv(const SimplexSpline& s, Point u, Point p)
{
  const std::array<Point, 1> dirs = {u};
  return eval_derivs(s, dirs, p);
}

double eval_derivs(const SimplexSpline& s, std::span<const Point> directions,
                   Point p)
{
  return eval_derivs(s, directions, p, approach_from_inside(s.sites(), p));
}

double eval_derivs(const SimplexSpline& s, std::span<const Point> directions,
                   Point p, const Approach& approach)
{
  SimplexEvaluator ev(s.sites(), p, approach, directions);
  return s.alpha() * ev.unit(s.knots());
}

EdgeRestriction::EdgeRestriction(SimplexSpline s, int corner_a, int corner_b)
    : spline_(std::move(s)), a_(spline_.sites().v.at(corner_a)),
      b_(spline_.sites().v.at(corner_b))
{
}

double EdgeRestriction::operator()(double t) const
{
  return eval_M(spline_, (1.0 - t) * a_ + t * b_);
}

EdgeRestriction restrict_to_edge(const SimplexSpline& s, int corner_a,
                                 int corner_b)
{
  if (corner_a < 0 || corner_a > 2 || corner_b < 0 || corner_b > 2 ||
      corner_a == corner_b)
    throw std::invalid_argument("restrict_to_edge: not a macrotriangle edge");
  return EdgeRestriction(s, corner_a, corner_b);
}

double univariate_bspline(std::span<const double> knots, double t)
{
  if (knots.size() < 2)
    throw std::invalid_argument("univariate_bspline: need at least 2 knots");
  if (knots.front() == knots.back())
    throw std::invalid_argument("univariate_bspline: all knots equal");
  if (!std::is_sorted(knots.begin(), knots.end()))
    throw std::invalid_argument("univariate_bspline: knots must be nondecreasing");
  if (t < knots.front() || t >= knots.back())
    return 0.0;

  // Cox-de Boor triangle, degree 0 upward.
  const std::size_t d = knots.size() - 2;
  std::vector<double> n(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    n[i] = (knots[i] <= t && t < knots[i + 1]) ? 1.0 : 0.0;
  for (std::size_t r = 1; r <= d; ++r)
    for (std::size_t i = 0; i + r <= d; ++i) {
      double v = 0.0;
      const double left = knots[i + r] - knots[i];
      const double right = knots[i + r + 1] - knots[i + 1];
      if (left > 0)
        v += (t - knots[i]) / left * n[i];
      if (right > 0)
        v += (knots[i + r + 1] - t) / right * n[i + 1];
      n[i] = v;
    }
  return n[0];
}

double evaluate(const Polynomial2& f, Point p)
{
  double s = 0.0;
  for (const auto& m : f)
    s += m.c * std::pow(p.x, m.a) * std::pow(p.y, m.b);
  return s;
}

int degree(const Polynomial2& f)
{
  int d = 0;
  for (const auto& m : f)
    if (m.c != 0.0)
      d = std::max(d, m.a + m.b);
  return d;
}

namespace
{
// E[x^a y^b] for x = sum lambda_i k_i, lambda ~ Dirichlet(1, ..., 1).
double dirichlet_moment(const std::vector<Point>& k, int a, int b)
{
  const int n = static_cast<int>(k.size());
  const int r = a + b;
  if (r == 0)
    return 1.0;
  std::vector<int> tuple(r, 0);
  double total = 0.0;
  while (true) {
    double coord = 1.0;
    std::vector<int> mult(n, 0);
    for (int s = 0; s < r; ++s) {
      coord *= (s < a) ? k[tuple[s]].x : k[tuple[s]].y;
      ++mult[tuple[s]];
    }
    // (n-1)! prod(m_i!) / (n-1+r)!
    double e = 1.0;
    for (int s = 0; s < r; ++s)
      e /= double(n + s);
    for (int m : mult)
      for (int f = 2; f <= m; ++f)
        e *= f;
    total += coord * e;

    int pos = r - 1;
    while (pos >= 0 && ++tuple[pos] == n)
      tuple[pos--] = 0;
    if (pos < 0)
      break;
  }
  return total;
}
} // namespace

std::pair<double, double> moment_oracle(const SimplexSpline& s,
                                        const Polynomial2& f, int refinement)
{
  if (s.alpha() != 1.0)
    throw std::invalid_argument("moment_oracle: requires alpha == 1");
  if (degree(f) > 3)
    throw std::invalid_argument("moment_oracle: degree of f must be <= 3");

  double lhs = 0.0;
  for (const auto& q : split_rule(s.sites(), refinement))
    lhs += q.w * evaluate(f, q.p) * eval_M(s, q.p);

  const std::vector<Point> knots = s.knot_points();
  double rhs = 0.0;
  for (const auto& m : f)
    rhs += m.c * dirichlet_moment(knots, m.a, m.b);
  return {lhs, rhs};
}

} // namespace ps12
