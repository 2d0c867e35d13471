// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
// Usage: acceptance <path to the ps12 executable>

#include "ps12/classify.hpp"
#include "ps12/hermite_nodal.hpp"
#include "ps12/interpolation.hpp"
#include "ps12/property_suite.hpp"
#include "ps12/simplex_spline.hpp"
#include "ps12/smooth_join.hpp"
#include "ps12/surface.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace ps12;

namespace
{

constexpr double kUnityTol = 1e-10;
constexpr double kMarsdenTol = 1e-9;
constexpr double kBoundaryTol = 1e-10;
constexpr double kReproductionTol = 1e-9;
constexpr double kOrderTarget = 6.0, kOrderBand = 0.3;
constexpr double kConvergenceSeconds = 120.0;
constexpr double kClassifySeconds = 60.0;
constexpr double kNodeTol = 1e-10;
constexpr double kStabilityDigitsTol = 1e-10;
constexpr double kJoinTol = 1e-8;
constexpr double kFreeJumpTol = 1e-3;
constexpr int kFreeJumpMinimum = 99;
constexpr double kRatioLo = 3.5, kRatioHi = 4.5;
constexpr double kNodalTol = 1e-9;
constexpr double kMomentTol = 1e-8;
constexpr double kPivotTol = 1e-10;

std::string sci(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail)
{
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << "  ("
            << detail << ")" << std::endl;
  if (!pass)
    ++failures;
}

// Runs `body` and reports a thrown exception as a failure.
void criterion(int id, const std::string& name,
               const std::function<bool(std::string&)>& body)
{
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("threw: ") + e.what();
  }
  report(id, name, pass, detail);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<MacroTriangle> five_triangles()
{
  std::mt19937_64 rng(20240901);
  std::vector<MacroTriangle> out;
  for (int i = 0; i < 5; ++i)
    out.push_back(random_triangle(rng));
  return out;
}

std::string run_command(const std::string& cmd, int& status)
{
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    throw std::runtime_error("cannot run " + cmd);
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe))
    out += buf;
  status = pclose(pipe);
  return out;
}

} // namespace

int main(int argc, char** argv)
{
  if (argc < 2) {
    std::cerr << "usage: acceptance <ps12 executable>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const auto triangles = five_triangles();

  criterion(1, "classify prints the 20 admissible orbits", [&](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    int status = 0;
    const std::string out = run_command("\"" + cli + "\" classify --degree 5", status);
    const double secs = seconds_since(t0);
    std::istringstream in(out);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);)
      lines.push_back(l);
    std::set<MultiplicityVector> got;
    for (const auto& l : lines)
      got.insert(orbit_representative(MultiplicityVector::parse(l)));
    const char* listed[] = {"600101", "500201", "501200", "410102", "410201",
                             "320201", "220211", "422000", "332000", "412100",
                             "322100", "141110", "132110", "222110", "221111",
                             "411200", "321200", "131210", "221210", "121211"};
    std::set<MultiplicityVector> expected;
    for (const char* g : listed)
      expected.insert(orbit_representative(MultiplicityVector::parse(g)));
    d = std::to_string(lines.size()) + " lines, " + std::to_string(got.size()) +
        " distinct orbits, " + sci(secs) + " s";
    return status == 0 && lines.size() == 20 && got == expected && secs < kClassifySeconds;
  });

  criterion(2, "partition of unity on 10^4 points", [&](std::string& d) {
    std::mt19937_64 rng(11);
    double worst = 0.0, lowest = INFINITY;
    for (const auto& t : triangles) {
      const auto b = instantiate(t);
      for (int i = 0; i < 2000; ++i) {
        const BasisValues v = eval_all(*b, random_point(t, rng));
        double s = 0.0;
        for (double x : v) {
          s += x;
          lowest = std::min(lowest, x);
        }
        worst = std::max(worst, std::abs(s - 1));
      }
    }
    d = "max |sum - 1| = " + sci(worst) + ", min S_j = " + sci(lowest);
    return worst <= kUnityTol && lowest >= -1e-14;
  });

  criterion(3, "Marsden identity on 10^3 samples", [&](std::string& d) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto b = instantiate(triangles[i % 5]);
      const LinearForm l{u(rng), {u(rng), u(rng)}};
      const Point p = random_point(b->triangle(), rng);
      worst = std::max(worst, std::abs(marsden_residual(*b, p, l)) /
                                  std::max(1.0, std::pow(std::abs(l(p)), 5)));
    }
    d = "max scaled residual " + sci(worst);
    return worst <= kMarsdenTol;
  });

  criterion(4, "boundary reduction to 8 edge B-splines", [&](std::string& d) {
    double worst = 0.0;
    int edges = 0;
    for (const auto& t : triangles) {
      const auto b = instantiate(t);
      for (int e = 0; e < 3; ++e) {
        // Throws unless exactly 8 restrictions are nonzero.
        const auto m = boundary_reduction(*b, e, (e + 1) % 3, 200);
        std::set<int> which;
        for (const auto& x : m) {
          worst = std::max(worst, x.max_error);
          which.insert(x.bspline_index);
        }
        if (which.size() != 8)
          return false;
        ++edges;
      }
    }
    d = std::to_string(edges) + " edges, max mismatch " + sci(worst);
    return worst <= kBoundaryTol;
  });

  criterion(5, "Q reproduces the 21 monomials of degree <= 5", [&](std::string& d) {
    const auto b = instantiate(MacroTriangle({0, 0}, {1, 0}, {0, 1}));
    std::mt19937_64 rng(17);
    std::vector<Point> pts = {{0, 0}, {1, 0}, {0, 1}};
    for (int i = 0; i < 500; ++i)
      pts.push_back(random_point(b->triangle(), rng));
    double worst = 0.0;
    int count = 0;
    for (int deg = 0; deg <= 5; ++deg)
      for (int i = 0; i <= deg; ++i, ++count) {
        const int j = deg - i;
        const ScalarField f = [i, j](Point p) { return std::pow(p.x, i) * std::pow(p.y, j); };
        const SplineFunction q = quasi_interpolant(b, f);
        double err = 0.0, scale = 0.0;
        for (const Point p : pts) {
          err = std::max(err, std::abs(q(p) - f(p)));
          scale = std::max(scale, std::abs(f(p)));
        }
        worst = std::max(worst, err / scale);
      }
    d = std::to_string(count) + " monomials, max relative error " + sci(worst);
    return count == 21 && worst <= kReproductionTol;
  });

  criterion(6, "approximation order 6 for sin(x) exp(y)", [&](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const Triangulation base({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}});
    const auto rows = convergence_study([](Point p) { return std::sin(p.x) * std::exp(p.y); },
                                        base, 4);
    const double secs = seconds_since(t0);
    if (!rows.back().order)
      return false;
    const double order = *rows.back().order;
    const double shrink = rows[rows.size() - 2].error / rows.back().error;
    d = "orders";
    for (const auto& r : rows)
      if (r.order)
        d += " " + std::to_string(*r.order).substr(0, 5);
    d += ", last error ratio " + std::to_string(shrink).substr(0, 5) + ", " + sci(secs) + " s";
    return std::abs(order - kOrderTarget) <= kOrderBand && secs < kConvergenceSeconds;
  });

  criterion(7, "Lagrange solve, node residual and aspect-independent K", [&](std::string& d) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double residual = 0.0;
    std::vector<double> ks;
    for (double stretch : {1.0, 10.0, 100.0}) {
      const MacroTriangle t({0, 0}, {stretch, 0}, {stretch / 2, std::sqrt(3.0) / 2});
      const auto b = instantiate(t);
      BasisValues v;
      for (double& x : v)
        x = u(rng);
      const SplineFunction s = lagrange_interpolant(b, v);
      const DomainPointSet xi = domain_points(*b);
      for (int j = 0; j < kBasisSize; ++j)
        residual = std::max(residual, std::abs(s(xi[j]) - v[j]));
      ks.push_back(stability_estimate(*b));
    }
    double spread = 0.0;
    for (double k : ks)
      spread = std::max(spread, std::abs(k - ks[0]) / ks[0]);
    char kbuf[64];
    std::snprintf(kbuf, sizeof kbuf, "%.12f", ks[0]);
    d = "node residual " + sci(residual) + ", K = " + kbuf + ", relative spread " + sci(spread);
    return residual <= kNodeTol && spread <= kStabilityDigitsTol;
  });

  criterion(8, "order-2 joins for 100 random (c, beta)", [&](std::string& d) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0), along(-0.3, 1.3), away(0.3, 1.0);
    double worst = 0.0;
    int separated = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const MacroTriangle t = random_triangle(rng);
      const Point v1 = t.vertex(0), v2 = t.vertex(1), v3 = t.vertex(2);
      const Point e = v2 - v1;
      Point n = Point{-e.y, e.x} / norm(e);
      if (dot(n, v3 - v1) > 0)
        n = -n;
      const EdgeJoin join(v1, v2, v3, v1 + along(rng) * e + away(rng) * norm(e) * n);
      BasisValues c, ct;
      for (int j = 0; j < kBasisSize; ++j) {
        c[j] = u(rng);
        ct[j] = u(rng);
      }
      const SplineFunction f(join.basis(), c);
      if (verify_join(f, SplineFunction(join.basis_tilde(), ct), 2).relative() > kFreeJumpTol)
        ++separated;
      apply_forced(ct, propagate(c, join.beta(), 2));
      worst = std::max(worst, verify_join(f, SplineFunction(join.basis_tilde(), ct), 2).relative());
    }
    d = "max propagated relative jump " + sci(worst) + ", unpropagated separated in " +
        std::to_string(separated) + "/100";
    return worst <= kJoinTol && separated >= kFreeJumpMinimum;
  });

  criterion(9, "h^2 decay of the Bezier distance", [&](std::string& d) {
    const MacroTriangle ref({0.1, 0.0}, {1.2, 0.2}, {0.4, 0.9});
    const auto s = bezier_distance_check([](Point p) { return std::sin(p.x + 2 * p.y); }, ref,
                                         {0.5, 0.3}, {0.4, 0.2, 0.1, 0.05});
    const std::size_t n = s.ratios.size();
    if (n < 2)
      return false;
    d = "last ratios " + std::to_string(s.ratios[n - 2]).substr(0, 6) + ", " +
        std::to_string(s.ratios[n - 1]).substr(0, 6);
    return s.ratios[n - 2] >= kRatioLo && s.ratios[n - 2] <= kRatioHi &&
           s.ratios[n - 1] >= kRatioLo && s.ratios[n - 1] <= kRatioHi;
  });

  criterion(10, "corner nodal function and its S3 images", [&](std::string& d) {
    const MacroTriangle t = triangles[0];
    double worst = 0.0;
    int images = 0;
    // Every relabeling of the corners, first corner playing v1.
    std::array<int, 3> perm = {0, 1, 2};
    do {
      const MacroTriangle r(t.vertex(perm[0]), t.vertex(perm[1]), t.vertex(perm[2]));
      const SplineFunction e = eps_v1(instantiate(r));
      for (int i = 0; i < 3; ++i)
        worst = std::max(worst, std::abs(e(r.vertex(i)) - (i == 0 ? 1.0 : 0.0)));
      ++images;
    } while (std::next_permutation(perm.begin(), perm.end()));
    // The cyclic images on one labeling.
    const auto b = instantiate(t);
    for (int c = 0; c < 3; ++c) {
      const SplineFunction e = eps_vertex(b, c);
      for (int i = 0; i < 3; ++i)
        worst = std::max(worst, std::abs(e(t.vertex(i)) - (i == c ? 1.0 : 0.0)));
    }
    d = std::to_string(images) + " relabelings and 3 rotations, max deviation " + sci(worst);
    return worst <= kNodalTol;
  });

  criterion(11, "moment oracle and pivot independence", [&](std::string& d) {
    const auto reps = admissible_list();
    const SplitSites sites = build_sites(triangles[1]);
    double moment = 0.0;
    for (const auto& m : reps) {
      const SimplexSpline s(sites, m);
      for (int deg = 0; deg <= 3; ++deg)
        for (int a = 0; a <= deg; ++a) {
          const auto [quad, exact] = moment_oracle(s, {{a, deg - a, 1.0}});
          moment = std::max(moment, std::abs(quad - exact) / std::max(1.0, std::abs(exact)));
        }
    }
    std::mt19937_64 rng(29);
    double pivot = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const SimplexSpline s(sites, reps[i % reps.size()]);
      const Point p = random_point(triangles[1], rng);
      const double ref = eval_M(s, p, PivotRule::max_area);
      const double scale = std::max(1.0, std::abs(ref));
      for (auto rule : {PivotRule::first_valid, PivotRule::last_valid})
        pivot = std::max(pivot, std::abs(eval_M(s, p, rule) - ref) / scale);
    }
    d = std::to_string(reps.size()) + " splines, max moment gap " + sci(moment) +
        ", max pivot gap " + sci(pivot);
    return reps.size() == 20 && moment <= kMomentTol && pivot <= kPivotTol;
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
