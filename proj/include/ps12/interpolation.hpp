#pragma once

/// \file interpolation.hpp
/// Dual points, domain points, the blossoming quasi-interpolant, Lagrange
/// interpolation at the domain points and the derived stability checks.

#include "ps12/basis.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace ps12
{

using ScalarField = std::function<double(Point)>;
using DualPointSet = std::array<std::array<Point, 5>, kBasisSize>;
using DomainPointSet = std::array<Point, kBasisSize>;
using CollocationMatrix = Eigen::Matrix<double, kBasisSize, kBasisSize>;

DualPointSet dual_points(const BasisInstance& b);

/// Averages of the dual points, in canonical order.
DomainPointSet domain_points(const BasisInstance& b);

/// A linear form l(p) = c + g . p.
struct LinearForm
{
  double c = 0.0;
  Point g;

  double operator()(Point p) const { return c + dot(g, p); }
};

/// l(p)^5 - sum_j D_j(l) S_j(p), with D_j the product of l over the dual
/// points of function j.
double marsden_residual(const BasisInstance& b, Point p, const LinearForm& l);

/// Blossom weights k^5 (-1)^(k-1) / 5! applied to every k-subset average.
/// Exposed for testing: they sum to one over all nonempty subsets.
double blossom_weight(int subset_size);

/// Quasi-interpolant coefficients: the blossom of f at the dual points of
/// each basis function. f must be safe to call concurrently.
BasisValues quasi_coefficients(const BasisInstance& b, const ScalarField& f);

SplineFunction quasi_interpolant(const BasisPtr& b, const ScalarField& f);

/// A_ij = S_j(xi_i).
CollocationMatrix collocation_matrix(const BasisInstance& b);

/// LU factorization of the collocation matrix with partial pivoting; solves
/// carry one step of iterative refinement.
class LagrangeSolver
{
public:
  /// Throws std::runtime_error when the matrix is numerically singular.
  explicit LagrangeSolver(const BasisInstance& b);

  BasisValues solve(const BasisValues& values) const;
  const CollocationMatrix& matrix() const { return a_; }
  CollocationMatrix inverse() const;

private:
  CollocationMatrix a_;
  Eigen::PartialPivLU<CollocationMatrix> lu_;
};

SplineFunction lagrange_interpolant(const BasisPtr& b, const BasisValues& values);

/// ||A^-1||_inf, an upper bound on the basis condition number in L_inf.
double stability_estimate(const BasisInstance& b);

struct BezierDistanceStudy
{
  std::vector<double> h;
  /// max_j |c_j - s(xi_j)| for s = Q(f) on the triangle of size h.
  std::vector<double> distance;
  /// distance[i] / distance[i+1].
  std::vector<double> ratios;
};

/// Runs Q(f) on anchor + h * (reference - reference.v1) for each h and
/// measures how far the Bezier ordinates sit from the spline values at the
/// domain points.
BezierDistanceStudy bezier_distance_check(const ScalarField& f,
                                          const MacroTriangle& reference,
                                          Point anchor,
                                          const std::vector<double>& hs);

struct QuasiErrorStudy
{
  std::vector<double> h;
  /// max |f - Q(f)| over a fixed barycentric sample set.
  std::vector<double> error;
  /// log2(error[i] / error[i+1]) for successive halvings.
  std::vector<double> orders;
};

/// Scales the reference triangle like bezier_distance_check and samples the
/// quasi-interpolation error at `samples` fixed barycentric points.
QuasiErrorStudy quasi_error_study(const ScalarField& f,
                                  const MacroTriangle& reference, Point anchor,
                                  const std::vector<double>& hs,
                                  int samples = 200);

} // namespace ps12
