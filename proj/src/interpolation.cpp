#include "ps12/interpolation.hpp"

#include "ps12/kernels.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ps12
{

DualPointSet dual_points(const BasisInstance& b)
{
  DualPointSet out;
  for (int j = 0; j < kBasisSize; ++j)
    for (int r = 0; r < 5; ++r)
      out[j][r] = b.sites().v[b[j].dual[r]];
  return out;
}

DomainPointSet domain_points(const BasisInstance& b)
{
  const DualPointSet dual = dual_points(b);
  DomainPointSet out;
  for (int j = 0; j < kBasisSize; ++j) {
    Point s{};
    for (const Point& q : dual[j])
      s += q;
    out[j] = s / 5.0;
  }
  return out;
}

double marsden_residual(const BasisInstance& b, Point p, const LinearForm& l)
{
  const BasisValues v = eval_all(b, p);
  double rhs = 0.0;
  for (int j = 0; j < kBasisSize; ++j) {
    double d = 1.0;
    for (int s : b[j].dual)
      d *= l(b.sites().v[s]);
    rhs += d * v[j];
  }
  return std::pow(l(p), 5) - rhs;
}

double blossom_weight(int subset_size)
{
  if (subset_size < 1 || subset_size > 5)
    throw std::invalid_argument("blossom_weight: subset size must be in 1..5");
  const double k = subset_size;
  return ((subset_size % 2) ? 1.0 : -1.0) * k * k * k * k * k / 120.0;
}

BasisValues quasi_coefficients(const BasisInstance& b, const ScalarField& f)
{
  return kernels::quasi_coefficients_parallel(b, f);
}

SplineFunction quasi_interpolant(const BasisPtr& b, const ScalarField& f)
{
  return SplineFunction(b, quasi_coefficients(*b, f));
}

CollocationMatrix collocation_matrix(const BasisInstance& b)
{
  const DomainPointSet xi = domain_points(b);
  CollocationMatrix a;
  for (int i = 0; i < kBasisSize; ++i) {
    const BasisValues row = eval_all(b, xi[i]);
    for (int j = 0; j < kBasisSize; ++j)
      a(i, j) = row[j];
  }
  return a;
}

LagrangeSolver::LagrangeSolver(const BasisInstance& b)
    : a_(collocation_matrix(b)), lu_(a_)
{
  // Partial pivoting never reports singularity; check the pivots instead.
  const auto& lu = lu_.matrixLU();
  const double scale = a_.cwiseAbs().maxCoeff();
  for (int i = 0; i < kBasisSize; ++i)
    if (!(std::abs(lu(i, i)) > 1e-13 * scale))
      throw std::runtime_error("collocation matrix is singular");
}

BasisValues LagrangeSolver::solve(const BasisValues& values) const
{
  using Vec = Eigen::Matrix<double, kBasisSize, 1>;
  const Vec rhs = Eigen::Map<const Vec>(values.data());
  Vec x = lu_.solve(rhs);
  const Vec r = rhs - a_ * x;
  x += lu_.solve(r);
  BasisValues out;
  Eigen::Map<Vec>(out.data()) = x;
  return out;
}

CollocationMatrix LagrangeSolver::inverse() const
{
  return lu_.inverse();
}

SplineFunction lagrange_interpolant(const BasisPtr& b, const BasisValues& values)
{
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("lagrange_interpolant: values must be finite");
  const LagrangeSolver solver(*b);
  return SplineFunction(b, solver.solve(values));
}

double stability_estimate(const BasisInstance& b)
{
  const LagrangeSolver solver(b);
  return solver.inverse().cwiseAbs().rowwise().sum().maxCoeff();
}

BezierDistanceStudy bezier_distance_check(const ScalarField& f,
                                          const MacroTriangle& reference,
                                          Point anchor,
                                          const std::vector<double>& hs)
{
  BezierDistanceStudy out;
  const Point base = reference.vertex(0);
  for (double h : hs) {
    const MacroTriangle t(anchor + h * (reference.vertex(0) - base),
                          anchor + h * (reference.vertex(1) - base),
                          anchor + h * (reference.vertex(2) - base));
    const BasisPtr b = instantiate(t);
    const SplineFunction s = quasi_interpolant(b, f);
    const DomainPointSet xi = domain_points(*b);
    double d = 0.0;
    for (int j = 0; j < kBasisSize; ++j)
      d = std::max(d, std::abs(s.coeffs()[j] - s(xi[j])));
    out.h.push_back(h);
    out.distance.push_back(d);
  }
  for (std::size_t i = 0; i + 1 < out.distance.size(); ++i)
    out.ratios.push_back(out.distance[i] / out.distance[i + 1]);
  return out;
}

QuasiErrorStudy quasi_error_study(const ScalarField& f,
                                  const MacroTriangle& reference, Point anchor,
                                  const std::vector<double>& hs, int samples)
{
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Barycentric> bary(samples);
  for (auto& bc : bary) {
    double a = u(rng), c = u(rng);
    if (a + c > 1) {
      a = 1 - a;
      c = 1 - c;
    }
    bc = {{1 - a - c, a, c}};
  }

  QuasiErrorStudy out;
  const Point base = reference.vertex(0);
  for (double h : hs) {
    const MacroTriangle t(anchor + h * (reference.vertex(0) - base),
                          anchor + h * (reference.vertex(1) - base),
                          anchor + h * (reference.vertex(2) - base));
    const SplineFunction s = quasi_interpolant(instantiate(t), f);
    double e = 0.0;
    for (const auto& bc : bary) {
      const Point p = t.from_barycentric(bc);
      e = std::max(e, std::abs(f(p) - s(p)));
    }
    out.h.push_back(h);
    out.error.push_back(e);
  }
  for (std::size_t i = 0; i + 1 < out.error.size(); ++i)
    out.orders.push_back(std::log2(out.error[i] / out.error[i + 1]));
  return out;
}

} // namespace ps12
