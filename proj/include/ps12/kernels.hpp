#pragma once

/// \file kernels.hpp
/// Data-parallel loops behind the library, each with the serial loop it must
/// reproduce. The serial versions are the reference for tests and benchmarks.

#include "ps12/basis.hpp"

#include <functional>
#include <span>
#include <vector>

namespace ps12
{

/// Applies PS12_THREADS (if set to a positive integer) as the OpenMP thread
/// cap. Returns the resulting maximum thread count.
int configure_threads();

namespace kernels
{

/// Blossom of f at five points, through all 31 nonempty subset averages.
double blossom5(const std::function<double(Point)>& f,
                const std::array<Point, 5>& pts);

BasisValues quasi_coefficients_serial(const BasisInstance& b,
                                      const std::function<double(Point)>& f);
BasisValues quasi_coefficients_parallel(const BasisInstance& b,
                                        const std::function<double(Point)>& f);

/// s(p) for a batch of points inside the macrotriangle.
std::vector<double> evaluate_serial(const SplineFunction& s,
                                    std::span<const Point> points);
std::vector<double> evaluate_parallel(const SplineFunction& s,
                                      std::span<const Point> points);

/// Basis values at a batch of points, row-major (points x 39).
std::vector<BasisValues> basis_values_serial(const BasisInstance& b,
                                             std::span<const Point> points);
std::vector<BasisValues> basis_values_parallel(const BasisInstance& b,
                                               std::span<const Point> points);

} // namespace kernels
} // namespace ps12
