#include "ps12/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

namespace ps12
{

int configure_threads()
{
  if (const char* env = std::getenv("PS12_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0)
        omp_set_num_threads(n);
    } catch (const std::exception&) {
      // Ignored: a malformed cap leaves the OpenMP default in place.
    }
  }
  return omp_get_max_threads();
}

namespace kernels
{

namespace
{
// Collects the first exception thrown inside a parallel region.
class ErrorSlot
{
public:
  template <class F> void run(F&& f)
  {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(m_);
      if (!err_)
        err_ = std::current_exception();
    }
  }
  void rethrow() const
  {
    if (err_)
      std::rethrow_exception(err_);
  }

private:
  std::mutex m_;
  std::exception_ptr err_;
};

double subset_weight(int k)
{
  // k^5 (-1)^(k-1) / 5!
  const double k5 = double(k) * k * k * k * k;
  return ((k % 2) ? 1.0 : -1.0) * k5 / 120.0;
}
} // namespace

double blossom5(const std::function<double(Point)>& f,
                const std::array<Point, 5>& pts)
{
  double c = 0.0;
  for (int mask = 1; mask < 32; ++mask) {
    Point sum{};
    int k = 0;
    for (int r = 0; r < 5; ++r)
      if (mask & (1 << r)) {
        sum += pts[r];
        ++k;
      }
    c += subset_weight(k) * f(sum / double(k));
  }
  return c;
}

namespace
{
std::array<Point, 5> dual_of(const BasisInstance& b, int j)
{
  std::array<Point, 5> pts;
  for (int r = 0; r < 5; ++r)
    pts[r] = b.sites().v[b[j].dual[r]];
  return pts;
}
} // namespace

BasisValues quasi_coefficients_serial(const BasisInstance& b,
                                      const std::function<double(Point)>& f)
{
  BasisValues c{};
  for (int j = 0; j < kBasisSize; ++j)
    c[j] = blossom5(f, dual_of(b, j));
  return c;
}

BasisValues quasi_coefficients_parallel(const BasisInstance& b,
                                        const std::function<double(Point)>& f)
{
  BasisValues c{};
  ErrorSlot err;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < kBasisSize; ++j)
    err.run([&] { c[j] = blossom5(f, dual_of(b, j)); });
  err.rethrow();
  return c;
}

std::vector<double> evaluate_serial(const SplineFunction& s,
                                    std::span<const Point> points)
{
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    out[i] = s(points[i]);
  return out;
}

std::vector<double> evaluate_parallel(const SplineFunction& s,
                                      std::span<const Point> points)
{
  std::vector<double> out(points.size());
  const long n = static_cast<long>(points.size());
  ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i)
    err.run([&] { out[i] = s(points[i]); });
  err.rethrow();
  return out;
}

std::vector<BasisValues> basis_values_serial(const BasisInstance& b,
                                             std::span<const Point> points)
{
  std::vector<BasisValues> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    out[i] = eval_all(b, points[i]);
  return out;
}

std::vector<BasisValues> basis_values_parallel(const BasisInstance& b,
                                               std::span<const Point> points)
{
  std::vector<BasisValues> out(points.size());
  const long n = static_cast<long>(points.size());
  ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i)
    err.run([&] { out[i] = eval_all(b, points[i]); });
  err.rethrow();
  return out;
}

} // namespace kernels
} // namespace ps12
