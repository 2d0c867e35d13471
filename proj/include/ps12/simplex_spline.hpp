#pragma once

/// \file simplex_spline.hpp
/// Bivariate simplex splines with knots on the 12-split sites.
///
/// The canonical object is the unit-integral simplex spline M[K], evaluated
/// with the degree-lowering recurrence
///
///     M[K](p) = (n-1)/(n-3) * sum_i lambda_i M[K \ k_i](p),
///     D_u M[K](p) = (n-1) * sum_i mu_i M[K \ k_i](p),
///
/// where n = |K|, sum lambda_i = 1, sum lambda_i k_i = p, sum mu_i = 0 and
/// sum mu_i k_i = u, both supported on three affinely independent knots.
/// Three knots give the indicator of their triangle divided by its area;
/// collinear knot sets are line measures and evaluate to zero off the line.
/// Points on lines where a spline jumps are resolved by an Approach (a
/// symbolic perturbation of the evaluation point), so every value is a
/// one-sided limit; the default approach comes from inside the macrotriangle.

#include "ps12/geometry.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ps12
{

/// Choice of the three knots spanning the recurrence weights. Results do not
/// depend on it; the alternatives exist to test that.
enum class PivotRule
{
  max_area,
  first_valid,
  last_valid,
};

/// A simplex spline: knot multiplicities over the 10 sites of a 12-split and a
/// positive scale alpha. Its value is alpha * M[K].
class SimplexSpline
{
public:
  /// Throws std::invalid_argument when fewer than 3 knots are given, when all
  /// knots are collinear or when alpha is not positive.
  SimplexSpline(SplitSites sites, SiteCounts knots, double alpha = 1.0);
  SimplexSpline(SplitSites sites, const MultiplicityVector& m,
                double alpha = 1.0);

  int degree() const { return num_knots_ - 3; }
  int num_knots() const { return num_knots_; }
  const SiteCounts& knots() const { return knots_; }
  const SplitSites& sites() const { return sites_; }
  double alpha() const { return alpha_; }
  SimplexSpline with_alpha(double alpha) const;

  /// The knots as points, with repetition.
  std::vector<Point> knot_points() const;

private:
  SplitSites sites_;
  SiteCounts knots_;
  int num_knots_;
  double alpha_;
};

/// Evaluates many simplex splines with knots on the same sites at one point,
/// for a fixed list of derivative directions, sharing the recurrence across
/// calls. Not thread safe; create one per thread.
class SimplexEvaluator
{
public:
  SimplexEvaluator(const SplitSites& sites, Point p, const Approach& approach,
                   std::span<const Point> directions = {},
                   PivotRule rule = PivotRule::max_area);

  /// D_{u_1} ... D_{u_r} M[K](p) for the unit-integral spline with counts k.
  double unit(const SiteCounts& k);

private:
  double eval(const SiteCounts& k, int n, int dirs_left);

  const SplitSites& sites_;
  Point p_;
  Approach approach_;
  std::vector<Point> dirs_;
  PivotRule rule_;
  double tol_;
  std::unordered_map<std::uint64_t, double> memo_;
};

/// alpha * M[K](p), approached from inside the macrotriangle.
double eval_M(const SimplexSpline& s, Point p,
              PivotRule rule = PivotRule::max_area);
double eval_M(const SimplexSpline& s, Point p, const Approach& approach,
              PivotRule rule = PivotRule::max_area);

/// Directional derivative D_u (alpha * M[K]) at p.
double eval_deriv(const SimplexSpline& s, Point u, Point p);

/// Mixed directional derivative D_{u_1} ... D_{u_r}(alpha * M[K]) at p.
double eval_derivs(const SimplexSpline& s, std::span<const Point> directions,
                   Point p);
double eval_derivs(const SimplexSpline& s, std::span<const Point> directions,
                   Point p, const Approach& approach);

/// t -> s((1-t) a + t b) along a macrotriangle edge, approached from inside.
class EdgeRestriction
{
public:
  EdgeRestriction(SimplexSpline s, int corner_a, int corner_b);
  double operator()(double t) const;

private:
  SimplexSpline spline_;
  Point a_;
  Point b_;
};

/// Throws std::invalid_argument unless {corner_a, corner_b} is an edge.
EdgeRestriction restrict_to_edge(const SimplexSpline& s, int corner_a,
                                 int corner_b);

/// Degree (knots.size() - 2) B-spline with partition-of-unity normalization,
/// right-continuous, zero outside [knots.front(), knots.back()). Throws
/// std::invalid_argument when all knots coincide.
double univariate_bspline(std::span<const double> knots, double t);

/// Sparse bivariate polynomial sum c * x^a * y^b.
struct Monomial
{
  int a = 0;
  int b = 0;
  double c = 1.0;
};
using Polynomial2 = std::vector<Monomial>;

double evaluate(const Polynomial2& f, Point p);
int degree(const Polynomial2& f);

/// Integral of f * M[K] by quadrature (left) and the exact expectation of
/// f(sum lambda_i k_i) with lambda uniform on the standard simplex (right).
/// Requires alpha == 1 and deg f <= 3.
std::pair<double, double> moment_oracle(const SimplexSpline& s,
                                        const Polynomial2& f,
                                        int refinement = 32);

} // namespace ps12
