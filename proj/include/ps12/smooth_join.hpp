#pragma once

/// \file smooth_join.hpp
/// Edge-relative ordering of the domain points and the C0/C1/C2 conditions
/// between splines on two macrotriangles sharing an edge.
///
/// For T = [v1, v2, v3] and T~ = [v1, v2, v~3] with beta the barycentric
/// coordinates of v~3 in T, the ordinates c~_i of the spline on T~ are fixed
/// by the ordinates on T for i = 1..8 (C0), 9..15 (C1) and 16..21 (C2). All
/// indices in this header are 0-based, so those ranges are 0..7, 8..14 and
/// 15..20. A C3 join is out of reach: one of its conditions involves only
/// beta and the ordinates of one side.

#include "ps12/basis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ps12
{

/// The canonical order seen from edge [a, b] of a basis: position k holds the
/// basis index whose domain point, in barycentric coordinates relative to
/// (a, b, c), is canonical_domain_layout()[k].
struct OrderingMap
{
  int a = 0, b = 1, c = 2;
  std::array<int, kBasisSize> to_basis{};
  std::array<int, kBasisSize> from_basis{};
};

/// Throws std::invalid_argument unless a and b are distinct corners 0..2.
OrderingMap ordering(const BasisInstance& basis, int a, int b);

/// Position of the reflected domain point after swapping the roles of v1 and
/// v2; an involution on 0..38.
int mirror_index(int k);

/// One term coeff * b1^p[0] b2^p[1] b3^p[2] * c[index].
struct ConstraintTerm
{
  double coeff;
  std::array<int, 3> power;
  int index;
};

/// c~[target] = sum of terms.
struct ConstraintRow
{
  int target;
  std::vector<ConstraintTerm> terms;

  /// Coefficients of c as a dense row for a given beta.
  std::array<double, kBasisSize> evaluate(const Barycentric& beta) const;
  std::string to_string() const;
};

/// The rows for smoothness `order` in 0..2, symbolic in beta. Some rows
/// are stored as closed forms, the others as their images under
/// the edge reflection (beta1 <-> beta2, mirror_index). Throws
/// std::invalid_argument for other orders.
class SmoothnessConstraints
{
public:
  explicit SmoothnessConstraints(int order);

  int order() const { return order_; }
  const std::vector<ConstraintRow>& rows() const { return rows_; }
  /// The row for target, or nullptr.
  const ConstraintRow* row(int target) const;

private:
  int order_;
  std::vector<ConstraintRow> rows_;
};

/// Reflects a row: beta1 <-> beta2, every index through mirror_index.
ConstraintRow mirror(const ConstraintRow& row);

/// Two macrotriangles T = [v1, v2, v3] and T~ = [v1, v2, v~3].
class EdgeJoin
{
public:
  EdgeJoin(Point v1, Point v2, Point v3, Point v3_tilde);

  const BasisPtr& basis() const { return basis_; }
  const BasisPtr& basis_tilde() const { return basis_tilde_; }
  const Barycentric& beta() const { return beta_; }
  /// v~3 lies strictly across [v1, v2] from v3.
  bool genuine() const { return beta_[2] < 0; }

private:
  BasisPtr basis_;
  BasisPtr basis_tilde_;
  Barycentric beta_;
};

using PartialCoefficients = std::array<std::optional<double>, kBasisSize>;

/// The ordinates of T~ forced by c on T for the given order.
PartialCoefficients propagate(const BasisValues& c, const Barycentric& beta,
                              int order);

/// Overwrites the constrained entries of c_tilde.
void apply_forced(BasisValues& c_tilde, const PartialCoefficients& forced);

struct JumpReport
{
  int order = 0;
  /// Max |D^a f - D^a f~| over all partials of exact order k.
  std::array<double, 3> jump{};
  /// max(|c|_inf, |c~|_inf) / L^k with L the length of the shared edge.
  std::array<double, 3> scale{};
  int samples = 0;

  /// max_k jump[k] / scale[k] for k <= order.
  double relative() const;
};

/// Samples value and partial derivatives up to `order` from both sides of the
/// shared edge at interior points, skipping a neighbourhood of the edge
/// midpoint. Throws std::invalid_argument if the triangles do not share
/// exactly one edge or order is outside 0..2.
JumpReport verify_join(const SplineFunction& f, const SplineFunction& f_tilde,
                       int order, int samples = 50);

} // namespace ps12
