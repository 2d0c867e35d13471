#pragma once

/// \file basis.hpp
/// The 39-function C3 quintic simplex spline basis on a 12-split macrotriangle.
///
/// Eight generators, each a knot multiplicity vector with a weight and the
/// five sites of its dual polynomial, are expanded into their S3 orbits. The
/// stored functions are the weighted ones, S_j = w_j * alpha_j * M_j, which
/// form a positive partition of unity; spline coefficients over them are the
/// Bezier ordinates.

#include "ps12/geometry.hpp"
#include "ps12/simplex_spline.hpp"

#include <array>
#include <memory>
#include <span>
#include <vector>

namespace ps12
{

inline constexpr int kBasisSize = 39;
using BasisValues = std::array<double, kBasisSize>;

struct BasisGenerator
{
  MultiplicityVector m;
  double weight;
  /// Sites (0-based) of the linear factors of the dual polynomial.
  std::array<int, 5> dual;
};

const std::array<BasisGenerator, 8>& bc_generators();

struct BasisFunction
{
  MultiplicityVector m;
  int generator;
  /// m = act(sigma, generator.m).
  Permutation sigma;
  double weight;
  /// Sorted dual sites (0-based).
  std::array<int, 5> dual;
  /// Barycentric coordinates of the domain point, times 30 (exact).
  std::array<int, 3> domain30;
  /// The raw simplex spline alpha * M; the basis function is weight times it.
  SimplexSpline spline;
};

/// Domain points of the canonical ordering, as barycentric coordinates times
/// 30 relative to the edge [v1, v2]: indices 0..7 lie on that edge from v1 to
/// v2, 8..14 form the second layer, 15..20 the third, and 21..38 follow in
/// order of increasing distance from the edge, then from v1 toward v2.
const std::array<std::array<int, 3>, kBasisSize>& canonical_domain_layout();

struct NormalizationResult
{
  std::array<double, kBasisSize> alpha{};
  /// Max |l(p)^5 - sum w_j D_j(l) alpha_j M_j(p)| over the fitted samples,
  /// relative to max(1, |l(p)|^5).
  double residual = 0.0;
  /// Largest relative spread of alpha within an S3 orbit.
  double orbit_spread = 0.0;
};

class BasisInstance
{
public:
  /// Builds the basis on t in canonical order. Throws std::invalid_argument
  /// for a degenerate triangle and std::runtime_error when the normalization
  /// solve leaves a residual above 1e-8.
  explicit BasisInstance(const MacroTriangle& t);

  const MacroTriangle& triangle() const { return sites_.triangle; }
  const SplitSites& sites() const { return sites_; }
  const BasisFunction& operator[](int j) const { return functions_[j]; }
  std::span<const BasisFunction> functions() const { return functions_; }
  const NormalizationResult& normalization() const { return normalization_; }

  /// Position of the function with multiplicities m, or -1.
  int index_of(const MultiplicityVector& m) const;

private:
  SplitSites sites_;
  std::vector<BasisFunction> functions_;
  NormalizationResult normalization_;
};

using BasisPtr = std::shared_ptr<const BasisInstance>;
BasisPtr instantiate(const MacroTriangle& t);

/// Solves for the glyph scales alpha_j that make the barycentric Marsden
/// identity hold, by least squares over `samples` random (p, l) pairs.
NormalizationResult resolve_normalization(const MacroTriangle& t,
                                          int samples = 240,
                                          unsigned seed = 12345);

/// Weighted basis values at p. Throws std::out_of_range when p is outside
/// the closed macrotriangle.
BasisValues eval_all(const BasisInstance& b, Point p);
BasisValues eval_all(const BasisInstance& b, Point p, const Approach& approach);

/// Mixed directional derivative D_{u_1} ... D_{u_r} of every basis function.
BasisValues eval_all_dirs(const BasisInstance& b, Point p,
                          std::span<const Point> directions);
BasisValues eval_all_dirs(const BasisInstance& b, Point p,
                          std::span<const Point> directions,
                          const Approach& approach);

/// Partial derivatives d^{a+b}/dx^a dy^b for all a + b <= order.
struct DerivativeTable
{
  int order = 0;
  /// Indexed by at(a, b).
  std::vector<BasisValues> values;

  static int slot(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }
  const BasisValues& at(int a, int b) const { return values[slot(a, b)]; }
};

/// Throws std::invalid_argument for order outside 0..3.
DerivativeTable eval_all_derivs(const BasisInstance& b, Point p, int order);

/// The 8 quintic B-splines on {0^6, 1/2^2, 1^6}, as their 7-knot windows.
const std::array<std::array<double, 7>, 8>& edge_bspline_knots();
/// Averages of 5 consecutive knots of {0^6, 1/2^2, 1^6}.
std::array<double, 8> edge_greville();

struct EdgeMatch
{
  int basis_index;
  int bspline_index;
  double max_error;
};

/// Restricts every basis function to the edge from corner a to corner b and
/// matches the nonzero ones to the edge B-splines. Throws std::runtime_error
/// when the count is not 8 or a match misses by more than 1e-10.
std::array<EdgeMatch, 8> boundary_reduction(const BasisInstance& b, int corner_a,
                                            int corner_b, int samples = 200);

/// s = sum_j c_j S_j over one macrotriangle.
class SplineFunction
{
public:
  SplineFunction(BasisPtr basis, const BasisValues& coeffs);

  const BasisInstance& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const BasisValues& coeffs() const { return coeffs_; }
  BasisValues& coeffs() { return coeffs_; }

  double operator()(Point p) const;
  double derivative(std::span<const Point> directions, Point p) const;

private:
  BasisPtr basis_;
  BasisValues coeffs_;
};

} // namespace ps12
