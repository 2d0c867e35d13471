#pragma once

/// \file hermite_nodal.hpp
/// Nodal functionals, the change of basis between a unisolvent functional set
/// and the simplex-spline basis, and the nodal function for the point
/// evaluation at a corner written in basis coordinates.

#include "ps12/basis.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace ps12
{

/// Point evaluation (no directions) or a mixed directional derivative of
/// order up to 3 at an anchor point of the macrotriangle. Values on split
/// lines are taken as limits from inside the macrotriangle toward its
/// barycenter.
struct NodalFunctional
{
  Point anchor;
  std::vector<Point> directions;
  std::string label;

  static NodalFunctional value(Point p, std::string label = {});
  static NodalFunctional derivative(Point p, std::vector<Point> dirs,
                                    std::string label = {});

  int order() const { return static_cast<int>(directions.size()); }
  /// lambda(S_j) for every basis function.
  BasisValues on_basis(const BasisInstance& b) const;
  double operator()(const SplineFunction& s) const;
};

struct GlyphTerm
{
  const char* glyph;
  double coeff;
};

/// Coefficients of the corner-v1 nodal function on the raw glyphs.
const std::array<GlyphTerm, 16>& eps_v1_terms();

/// The nodal function for evaluation at corner 0, in weighted-basis
/// coefficients (each raw coefficient divided by the orbit weight). Throws
/// std::logic_error if a glyph is missing from the basis.
SplineFunction eps_v1(const BasisPtr& b);
/// Its image under the cyclic relabeling taking corner 0 to `corner`.
SplineFunction eps_vertex(const BasisPtr& b, int corner);

/// G_ij = lambda_i(S_j) for a set of 39 functionals.
class ConversionMatrix
{
public:
  using Matrix = Eigen::Matrix<double, kBasisSize, kBasisSize>;

  /// Throws std::invalid_argument when the count is not 39 and
  /// std::runtime_error when G is singular (the set is not unisolvent).
  ConversionMatrix(const BasisPtr& b, std::span<const NodalFunctional> functionals);

  const Matrix& matrix() const { return g_; }
  /// Basis coefficients of the spline whose functional values are `values`.
  BasisValues coefficients(const BasisValues& values) const;
  /// lambda_i(s) for each functional.
  BasisValues nodal_values(const SplineFunction& s) const;
  /// The nodal function dual to functional k.
  SplineFunction nodal_function(int k) const;
  /// Smallest |pivot| / largest after row equilibration.
  double pivot_ratio() const { return pivot_ratio_; }

private:
  BasisPtr b_;
  std::vector<NodalFunctional> functionals_;
  Matrix g_;
  Eigen::FullPivLU<Matrix> lu_;
  double pivot_ratio_ = 0.0;
};

ConversionMatrix conversion_matrix(const BasisPtr& b,
                                   std::span<const NodalFunctional> functionals);

/// max_k |lambda_k(g) - delta_ki|; pass unit_index = -1 for no unit entry.
double nodal_residual(const SplineFunction& g,
                      std::span<const NodalFunctional> functionals,
                      int unit_index);

} // namespace ps12
