#include "ps12/property_suite.hpp"

#include "ps12/classify.hpp"
#include "ps12/hermite_nodal.hpp"
#include "ps12/interpolation.hpp"
#include "ps12/simplex_spline.hpp"
#include "ps12/smooth_join.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace ps12
{

MacroTriangle random_triangle(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double min_angle = 15.0 * std::acos(-1.0) / 180.0;
  while (true) {
    const Point p[3] = {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    if (std::abs(orient(p[0], p[1], p[2])) < 0.4)
      continue;
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      const Point a = p[(i + 1) % 3] - p[i], b = p[(i + 2) % 3] - p[i];
      ok = std::acos(dot(a, b) / (norm(a) * norm(b))) > min_angle;
    }
    if (ok)
      return MacroTriangle(p[0], p[1], p[2]);
  }
}

Point random_point(const MacroTriangle& t, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(rng), b = u(rng);
  if (a + b > 1) {
    a = 1 - a;
    b = 1 - b;
  }
  return t.from_barycentric({{1 - a - b, a, b}});
}

namespace
{
BasisValues random_values(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BasisValues c;
  for (double& x : c)
    x = u(rng);
  return c;
}

// Runs `body`, turning an exception into a failed check.
PropertyCheck guarded(const std::string& name, double tol,
                      const std::function<double(std::string&)>& body)
{
  PropertyCheck c{name, 0.0, tol, false, false, {}};
  try {
    c.value = body(c.detail);
    c.pass = c.value <= tol;
  } catch (const std::exception& e) {
    c.value = INFINITY;
    c.detail = std::string("threw: ") + e.what();
  }
  return c;
}
} // namespace

std::vector<PropertyCheck> run_property_suite(const SuiteOptions& o)
{
  if (o.triangles < 1 || o.points < 1 || o.join_trials < 1)
    throw std::invalid_argument("suite sizes must be positive");
  std::mt19937_64 rng(o.seed);
  std::vector<BasisPtr> bases;
  for (int i = 0; i < o.triangles; ++i)
    bases.push_back(instantiate(random_triangle(rng)));

  std::vector<PropertyCheck> out;

  out.push_back(guarded("partition_of_unity", 1e-10, [&](std::string& d) {
    double worst = 0.0, lowest = INFINITY;
    for (const auto& b : bases)
      for (int i = 0; i < o.points; ++i) {
        const BasisValues v = eval_all(*b, random_point(b->triangle(), rng));
        double sum = 0.0;
        for (double x : v) {
          sum += x;
          lowest = std::min(lowest, x);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    char buf[48];
    std::snprintf(buf, sizeof buf, "min basis value %.3e", lowest);
    d = buf;
    // Positivity up to round-off is part of the property.
    return lowest < -1e-14 ? INFINITY : worst;
  }));

  out.push_back(guarded("marsden_identity", 1e-9, [&](std::string&) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (const auto& b : bases)
      for (int i = 0; i < o.points / 4 + 1; ++i) {
        const LinearForm l{u(rng), {u(rng), u(rng)}};
        const Point p = random_point(b->triangle(), rng);
        worst = std::max(worst, std::abs(marsden_residual(*b, p, l)) /
                                    std::max(1.0, std::pow(std::abs(l(p)), 5)));
      }
    return worst;
  }));

  out.push_back(guarded("boundary_reduction", 1e-10, [&](std::string&) {
    double worst = 0.0;
    for (const auto& b : bases)
      for (int e = 0; e < 3; ++e)
        for (const EdgeMatch& m : boundary_reduction(*b, e, (e + 1) % 3))
          worst = std::max(worst, m.max_error);
    return worst;
  }));

  out.push_back(guarded("polynomial_reproduction", 1e-9, [&](std::string&) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::array<double, 21> a;
    for (double& x : a)
      x = u(rng);
    const ScalarField f = [&a](Point p) {
      double s = 0.0;
      int k = 0;
      for (int d = 0; d <= 5; ++d)
        for (int i = 0; i <= d; ++i)
          s += a[k++] * std::pow(p.x, i) * std::pow(p.y, d - i);
      return s;
    };
    double worst = 0.0;
    for (const auto& b : bases) {
      const SplineFunction q = quasi_interpolant(b, f);
      for (int i = 0; i < o.points / 4 + 1; ++i) {
        const Point p = random_point(b->triangle(), rng);
        worst = std::max(worst, std::abs(q(p) - f(p)) / std::max(1.0, std::abs(f(p))));
      }
    }
    return worst;
  }));

  {
    double worst = 0.0;
    int separated = 0;
    std::string err;
    try {
      std::uniform_real_distribution<double> s(-0.3, 1.3), dn(0.3, 1.0);
      for (int i = 0; i < o.join_trials; ++i) {
        const MacroTriangle t = random_triangle(rng);
        const Point v1 = t.vertex(0), v2 = t.vertex(1), v3 = t.vertex(2);
        const Point e = v2 - v1;
        Point n = Point{-e.y, e.x} / norm(e);
        if (dot(n, v3 - v1) > 0)
          n = -n;
        const EdgeJoin join(v1, v2, v3, v1 + s(rng) * e + dn(rng) * norm(e) * n);
        const BasisValues c = random_values(rng);
        BasisValues ct = random_values(rng);
        const SplineFunction f(join.basis(), c);
        const JumpReport free = verify_join(f, SplineFunction(join.basis_tilde(), ct), 2);
        if (free.jump[0] > 1e-3 * free.scale[0])
          ++separated;
        apply_forced(ct, propagate(c, join.beta(), 2));
        worst = std::max(worst,
                         verify_join(f, SplineFunction(join.basis_tilde(), ct), 2).relative());
      }
    } catch (const std::exception& e) {
      worst = INFINITY;
      err = std::string("threw: ") + e.what();
    }
    out.push_back({"c2_join_propagated", worst, 1e-8, false, worst <= 1e-8, err});
    const double frac = double(separated) / o.join_trials;
    out.push_back({"c0_jump_unpropagated", frac, 0.99, true, frac >= 0.99,
                   std::to_string(separated) + " of " + std::to_string(o.join_trials)});
  }

  out.push_back(guarded("lagrange_node_residual", 1e-10, [&](std::string&) {
    double worst = 0.0;
    for (const auto& b : bases) {
      const BasisValues v = random_values(rng);
      const SplineFunction s = lagrange_interpolant(b, v);
      const DomainPointSet xi = domain_points(*b);
      for (int j = 0; j < kBasisSize; ++j)
        worst = std::max(worst, std::abs(s(xi[j]) - v[j]));
    }
    return worst;
  }));

  out.push_back(guarded("stability_affine_invariance", 1e-10, [&](std::string& d) {
    const double k0 = stability_estimate(*bases[0]);
    double worst = 0.0;
    for (const auto& b : bases)
      worst = std::max(worst, std::abs(stability_estimate(*b) - k0) / k0);
    d = "K = " + std::to_string(k0);
    return worst;
  }));

  out.push_back(guarded("corner_nodal_functions", 1e-9, [&](std::string&) {
    double worst = 0.0;
    for (const auto& b : bases)
      for (int c = 0; c < 3; ++c) {
        const SplineFunction e = eps_vertex(b, c);
        for (int i = 0; i < 3; ++i)
          worst = std::max(worst, std::abs(e(b->triangle().vertex(i)) - (i == c ? 1.0 : 0.0)));
      }
    return worst;
  }));

  const std::vector<MultiplicityVector> reps = admissible_list();
  out.push_back({"admissible_orbits", std::abs(double(reps.size()) - 20), 0, false,
                 reps.size() == 20, std::to_string(reps.size()) + " orbits"});

  out.push_back(guarded("moment_oracle", 1e-8, [&](std::string&) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(reps.size()) - 1);
    std::uniform_int_distribution<int> deg(0, 3);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      const SimplexSpline s(bases[i % bases.size()]->sites(), reps[pick(rng)]);
      const int a = deg(rng);
      const int bdeg = std::uniform_int_distribution<int>(0, 3 - a)(rng);
      const auto [quad, exact] = moment_oracle(s, {{a, bdeg, 1.0}});
      worst = std::max(worst, std::abs(quad - exact) / std::max(1.0, std::abs(exact)));
    }
    return worst;
  }));

  out.push_back(guarded("pivot_independence", 1e-10, [&](std::string&) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(reps.size()) - 1);
    double worst = 0.0;
    for (int i = 0; i < o.points / 4 + 1; ++i) {
      const auto& b = bases[i % bases.size()];
      const SimplexSpline s(b->sites(), reps[pick(rng)]);
      const Point p = random_point(b->triangle(), rng);
      const double ref = eval_M(s, p, PivotRule::max_area);
      const double scale = std::max(1.0, std::abs(ref));
      for (auto rule : {PivotRule::first_valid, PivotRule::last_valid})
        worst = std::max(worst, std::abs(eval_M(s, p, rule) - ref) / scale);
    }
    return worst;
  }));

  return out;
}

} // namespace ps12
