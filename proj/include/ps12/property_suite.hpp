#pragma once

/// \file property_suite.hpp
/// Seeded self-checks behind `ps12 verify`.

#include "ps12/geometry.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ps12
{

struct PropertyCheck
{
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  /// value <= tolerance, unless `at_least` is set.
  bool at_least = false;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions
{
  std::uint64_t seed = 1;
  int triangles = 3;
  int points = 400;
  int join_trials = 20;
};

/// Partition of unity and positivity, Marsden identity, boundary reduction,
/// polynomial reproduction, smooth joins, Lagrange solves, corner nodal
/// functions, engine oracles and the admissible-spline count. The report is a
/// pure function of the options.
std::vector<PropertyCheck> run_property_suite(const SuiteOptions& options);

/// Triangle with vertices in [-1, 1]^2, area at least 0.2 and every angle
/// above 15 degrees.
MacroTriangle random_triangle(std::mt19937_64& rng);
/// Uniform point in the closed triangle.
Point random_point(const MacroTriangle& t, std::mt19937_64& rng);

} // namespace ps12
