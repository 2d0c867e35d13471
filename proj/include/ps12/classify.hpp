#pragma once

/// \file classify.hpp
/// Enumeration of the quintic simplex splines with knots on the six primary
/// sites of the 12-split that are C3 inside the macrotriangle and restrict to
/// zero or to one of the edge B-splines on every edge.
///
/// The combinatorial rule: across a line holding mu of the 8 knots a quintic
/// simplex spline is C^(6 - mu), so the six interior lines need mu <= 3. An
/// edge with mu <= 6 sees a zero restriction; mu = 7 gives the B-spline on
/// those knots, which must be a window of {0^6, 1/2^2, 1^6}. The rule is
/// cross-checked by sampling one-sided derivatives and edge restrictions.

#include "ps12/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ps12
{

enum class LineKind
{
  boundary,
  medial,
  median
};

/// A line through two or three of the primary sites v1..v6 (0-based 0..5).
struct KnotLine
{
  LineKind kind;
  std::vector<int> sites;
  /// 1-based, e.g. "{1,4,2}".
  std::string name;
};

/// Boundary edges {1,4,2}, {2,5,3}, {3,6,1}; medial edges {4,5}, {5,6},
/// {6,4}; medians {1,5}, {2,6}, {3,4}.
const std::array<KnotLine, 9>& knot_lines();

struct LineSmoothness
{
  /// Total multiplicity on the line.
  int mu = 0;
  /// At least two distinct sites on the line carry knots.
  bool active = false;
  /// 6 - mu on active lines; empty when inactive.
  std::optional<int> exponent;
};

/// Throws std::invalid_argument when the total is not 8 or all knots are
/// collinear.
std::array<LineSmoothness, 9> smoothness_class(const MultiplicityVector& m);

struct Verdict
{
  bool admissible = false;
  std::string reason;
};

/// Combinatorial verdict. Throws std::invalid_argument when the total is not 8.
Verdict is_admissible(const MultiplicityVector& m);

struct NumericVerdict
{
  bool interior_c3 = false;
  bool boundary_ok = false;
  /// Largest one-sided derivative jump across an interior line, relative to
  /// max|M| / diam^k for order k.
  double max_jump = 0.0;
  /// Largest misfit of an edge restriction against zero or the best-scaled
  /// edge B-spline, relative to max|M|.
  double max_edge_error = 0.0;
  std::string reason;

  bool admissible() const { return interior_c3 && boundary_ok; }
};

/// Sampling oracle on the given split. Orders 0..3 across each interior line
/// at `samples` points; tolerance 1e-7. Throws std::invalid_argument for
/// collinear knots or a total other than 8.
NumericVerdict numeric_admissibility(const SplitSites& sites,
                                     const MultiplicityVector& m,
                                     int samples = 20);

/// All multiplicity vectors over v1..v6 with total 8.
std::vector<MultiplicityVector> enumerate_candidates();

/// Lexicographically least element of the S3 orbit.
MultiplicityVector orbit_representative(const MultiplicityVector& m);

/// Representatives of the admissible orbits, sorted.
std::vector<MultiplicityVector> admissible_list();

struct CrossCheck
{
  int candidates = 0;
  /// Orbits with at least one non-collinear member.
  int orbits = 0;
  int admissible_orbits = 0;
  std::vector<std::string> disagreements;
};

/// Runs both verdicts on one representative of every non-collinear orbit.
CrossCheck cross_check(const SplitSites& sites, int samples = 20);

} // namespace ps12
