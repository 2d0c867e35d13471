// Serial reference kernels against their OpenMP versions.
// PS12_THREADS caps the thread count of the parallel variants.

#include "ps12/interpolation.hpp"
#include "ps12/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>

using namespace ps12;

namespace
{
const BasisPtr& basis()
{
  static const BasisPtr b = instantiate(MacroTriangle({0.1, 0.0}, {1.2, 0.2}, {0.4, 0.9}));
  return b;
}

double field(Point p) { return std::sin(p.x) * std::exp(p.y); }

std::vector<Point> points(int n)
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    double a = u(rng), c = u(rng);
    if (a + c > 1) {
      a = 1 - a;
      c = 1 - c;
    }
    out.push_back(basis()->triangle().from_barycentric({{1 - a - c, a, c}}));
  }
  return out;
}

const SplineFunction& spline()
{
  static const SplineFunction s = quasi_interpolant(basis(), field);
  return s;
}

// Both variants must agree before timing means anything.
void check_agreement()
{
  const auto pts = points(64);
  const auto a = kernels::evaluate_serial(spline(), pts);
  const auto b = kernels::evaluate_parallel(spline(), pts);
  const auto qa = kernels::quasi_coefficients_serial(*basis(), field);
  const auto qb = kernels::quasi_coefficients_parallel(*basis(), field);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-14) {
      std::cerr << "serial and parallel evaluation disagree\n";
      std::exit(1);
    }
  for (int j = 0; j < kBasisSize; ++j)
    if (std::abs(qa[j] - qb[j]) > 1e-14) {
      std::cerr << "serial and parallel coefficients disagree\n";
      std::exit(1);
    }
}

void BM_QuasiCoefficientsSerial(benchmark::State& st)
{
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::quasi_coefficients_serial(*basis(), field));
}
void BM_QuasiCoefficientsParallel(benchmark::State& st)
{
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::quasi_coefficients_parallel(*basis(), field));
}

void BM_EvaluateSerial(benchmark::State& st)
{
  const auto pts = points(static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::evaluate_serial(spline(), pts));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
void BM_EvaluateParallel(benchmark::State& st)
{
  const auto pts = points(static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::evaluate_parallel(spline(), pts));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_BasisValuesSerial(benchmark::State& st)
{
  const auto pts = points(static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::basis_values_serial(*basis(), pts));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
void BM_BasisValuesParallel(benchmark::State& st)
{
  const auto pts = points(static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::basis_values_parallel(*basis(), pts));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
} // namespace

BENCHMARK(BM_QuasiCoefficientsSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_QuasiCoefficientsParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EvaluateSerial)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BasisValuesSerial)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BasisValuesParallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv)
{
  configure_threads();
  check_agreement();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv))
    return 2;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
