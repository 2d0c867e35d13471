#include "ps12/basis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace ps12
{

const std::array<BasisGenerator, 8>& bc_generators()
{
  static const std::array<BasisGenerator, 8> gens = {{
      {MultiplicityVector::parse("600101"), 0.25, {0, 0, 0, 0, 0}},
      {MultiplicityVector::parse("500201"), 0.25, {0, 0, 0, 0, 3}},
      {MultiplicityVector::parse("410201"), 0.5, {0, 0, 0, 3, 3}},
      {MultiplicityVector::parse("320201"), 0.5, {0, 0, 1, 3, 3}},
      {MultiplicityVector::parse("220211"), 0.75, {0, 1, 3, 3, 9}},
      {MultiplicityVector::parse("141110"), 1.0, {1, 1, 1, 3, 4}},
      {MultiplicityVector::parse("131210"), 0.5, {0, 1, 1, 3, 4}},
      {MultiplicityVector::parse("121211"), 0.75, {0, 1, 3, 4, 9}},
  }};
  return gens;
}

const std::array<std::array<int, 3>, kBasisSize>& canonical_domain_layout()
{
  static const std::array<std::array<int, 3>, kBasisSize> layout = {{
      // edge [v1, v2]
      {30, 0, 0}, {27, 3, 0}, {24, 6, 0}, {18, 12, 0},
      {12, 18, 0}, {6, 24, 0}, {3, 27, 0}, {0, 30, 0},
      // second layer
      {27, 0, 3}, {24, 3, 3}, {18, 9, 3}, {14, 14, 2},
      {9, 18, 3}, {3, 24, 3}, {0, 27, 3},
      // third layer
      {24, 0, 6}, {18, 3, 9}, {14, 11, 5}, {11, 14, 5}, {3, 18, 9}, {0, 24, 6},
      // the rest, by b3 then b2
      {14, 5, 11}, {5, 14, 11}, {18, 0, 12}, {0, 18, 12},
      {14, 2, 14}, {11, 5, 14}, {5, 11, 14}, {2, 14, 14},
      {12, 0, 18}, {9, 3, 18}, {3, 9, 18}, {0, 12, 18},
      {6, 0, 24}, {3, 3, 24}, {0, 6, 24},
      {3, 0, 27}, {0, 3, 27},
      {0, 0, 30},
  }};
  return layout;
}

namespace
{

// Barycentric coordinates of each site, times 6.
constexpr std::array<std::array<int, 3>, kNumSites> site_bary6 = {{
    {6, 0, 0}, {0, 6, 0}, {0, 0, 6},
    {3, 3, 0}, {0, 3, 3}, {3, 0, 3},
    {0, 0, 0}, {0, 0, 0}, {0, 0, 0}, // medial midpoints carry no dual factors
    {2, 2, 2},
}};

struct OrbitMember
{
  MultiplicityVector m;
  int generator;
  Permutation sigma;
  double weight;
  std::array<int, 5> dual;
  std::array<int, 3> domain30;
};

std::vector<OrbitMember> expand_orbits()
{
  std::vector<OrbitMember> out;
  const auto& gens = bc_generators();
  for (int g = 0; g < int(gens.size()); ++g) {
    for (const auto& sigma : Permutation::all()) {
      const MultiplicityVector m = act(sigma, gens[g].m);
      if (std::any_of(out.begin(), out.end(),
                      [&](const OrbitMember& o) { return o.m == m; }))
        continue;
      OrbitMember o{m, g, sigma, gens[g].weight, {}, {0, 0, 0}};
      for (int r = 0; r < 5; ++r) {
        o.dual[r] = sigma.site(gens[g].dual[r]);
        for (int i = 0; i < 3; ++i)
          o.domain30[i] += site_bary6[o.dual[r]][i];
      }
      std::sort(o.dual.begin(), o.dual.end());
      out.push_back(o);
    }
  }
  if (out.size() != kBasisSize)
    throw std::logic_error("basis: orbit expansion did not give 39 functions");
  return out;
}

// Orbit members in canonical order.
std::vector<OrbitMember> canonical_members()
{
  std::vector<OrbitMember> members = expand_orbits();
  const auto& layout = canonical_domain_layout();
  std::vector<OrbitMember> ordered;
  ordered.reserve(kBasisSize);
  for (const auto& xi : layout) {
    auto it = std::find_if(members.begin(), members.end(),
                           [&](const OrbitMember& o) { return o.domain30 == xi; });
    if (it == members.end())
      throw std::logic_error("basis: domain point missing from the layout");
    ordered.push_back(*it);
  }
  return ordered;
}

void check_inside(const MacroTriangle& t, Point p)
{
  const Barycentric b = barycentric(t, p);
  constexpr double eps = 1e-12;
  if (b[0] < -eps || b[1] < -eps || b[2] < -eps)
    throw std::out_of_range("basis evaluation: point outside the macrotriangle");
}

Point random_inside(const MacroTriangle& t, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(rng), b = u(rng);
  if (a + b > 1) {
    a = 1 - a;
    b = 1 - b;
  }
  return t.from_barycentric({{1 - a - b, a, b}});
}

} // namespace

NormalizationResult resolve_normalization(const MacroTriangle& t, int samples,
                                          unsigned seed)
{
  if (samples < kBasisSize)
    throw std::invalid_argument("resolve_normalization: too few samples");
  const SplitSites sites = build_sites(t);
  const std::vector<OrbitMember> members = canonical_members();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const Point center = sites.v[9];
  const double scale = t.diameter();

  Eigen::MatrixXd a(samples, kBasisSize);
  Eigen::VectorXd rhs(samples);
  Eigen::VectorXd row_scale(samples);
  for (int i = 0; i < samples; ++i) {
    const Point p = random_inside(t, rng);
    const double l0 = coef(rng), lx = coef(rng), ly = coef(rng);
    auto ell = [&](Point q) {
      return l0 + lx * (q.x - center.x) / scale + ly * (q.y - center.y) / scale;
    };
    SimplexEvaluator ev(sites, p, approach_from_inside(sites, p));
    for (int j = 0; j < kBasisSize; ++j) {
      double dual = 1.0;
      for (int s : members[j].dual)
        dual *= ell(sites.v[s]);
      a(i, j) = members[j].weight * dual * ev.unit(to_site_counts(members[j].m));
    }
    rhs(i) = std::pow(ell(p), 5);
    row_scale(i) = std::max(1.0, std::abs(rhs(i)));
  }

  // Columns are O(1/area); scale them for the solve.
  Eigen::VectorXd col_scale = a.colwise().norm().transpose();
  for (int j = 0; j < kBasisSize; ++j)
    if (col_scale(j) == 0.0)
      throw std::runtime_error("resolve_normalization: a basis function never sampled");
  const Eigen::MatrixXd scaled = a * col_scale.cwiseInverse().asDiagonal();
  const Eigen::VectorXd y = scaled.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd alpha = y.cwiseQuotient(col_scale);

  NormalizationResult out;
  for (int j = 0; j < kBasisSize; ++j)
    out.alpha[j] = alpha(j);
  out.residual = ((a * alpha - rhs).cwiseAbs().cwiseQuotient(row_scale)).maxCoeff();

  std::map<int, std::vector<double>> by_orbit;
  for (int j = 0; j < kBasisSize; ++j)
    by_orbit[members[j].generator].push_back(alpha(j));
  for (const auto& [g, vals] : by_orbit) {
    const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    out.orbit_spread = std::max(out.orbit_spread, (*hi - *lo) / std::abs(*hi));
  }
  return out;
}

BasisInstance::BasisInstance(const MacroTriangle& t) : sites_(build_sites(t))
{
  normalization_ = resolve_normalization(t);
  if (!(normalization_.residual <= 1e-8))
    throw std::runtime_error("basis: Marsden normalization residual too large");
  for (double a : normalization_.alpha)
    if (!(a > 0))
      throw std::runtime_error("basis: nonpositive normalization constant");

  const std::vector<OrbitMember> members = canonical_members();
  functions_.reserve(kBasisSize);
  for (int j = 0; j < kBasisSize; ++j) {
    const auto& o = members[j];
    functions_.push_back(BasisFunction{
        o.m, o.generator, o.sigma, o.weight, o.dual, o.domain30,
        SimplexSpline(sites_, o.m, normalization_.alpha[j])});
  }
}

int BasisInstance::index_of(const MultiplicityVector& m) const
{
  for (int j = 0; j < kBasisSize; ++j)
    if (functions_[j].m == m)
      return j;
  return -1;
}

BasisPtr instantiate(const MacroTriangle& t)
{
  return std::make_shared<const BasisInstance>(t);
}

BasisValues eval_all(const BasisInstance& b, Point p)
{
  check_inside(b.triangle(), p);
  return eval_all(b, p, approach_from_inside(b.sites(), p));
}

BasisValues eval_all(const BasisInstance& b, Point p, const Approach& approach)
{
  return eval_all_dirs(b, p, {}, approach);
}

BasisValues eval_all_dirs(const BasisInstance& b, Point p,
                          std::span<const Point> directions)
{
  check_inside(b.triangle(), p);
  return eval_all_dirs(b, p, directions, approach_from_inside(b.sites(), p));
}

BasisValues eval_all_dirs(const BasisInstance& b, Point p,
                          std::span<const Point> directions,
                          const Approach& approach)
{
  SimplexEvaluator ev(b.sites(), p, approach, directions);
  BasisValues out;
  for (int j = 0; j < kBasisSize; ++j) {
    const BasisFunction& f = b[j];
    out[j] = f.weight * f.spline.alpha() * ev.unit(f.spline.knots());
  }
  return out;
}

DerivativeTable eval_all_derivs(const BasisInstance& b, Point p, int order)
{
  if (order < 0 || order > 3)
    throw std::invalid_argument("eval_all_derivs: order must be in 0..3");
  check_inside(b.triangle(), p);
  const Approach ap = approach_from_inside(b.sites(), p);
  DerivativeTable table;
  table.order = order;
  table.values.resize(DerivativeTable::slot(0, order) + 1);
  for (int k = 0; k <= order; ++k)
    for (int bb = 0; bb <= k; ++bb) {
      std::vector<Point> dirs;
      dirs.insert(dirs.end(), k - bb, Point{1, 0});
      dirs.insert(dirs.end(), bb, Point{0, 1});
      table.values[DerivativeTable::slot(k - bb, bb)] =
          eval_all_dirs(b, p, dirs, ap);
    }
  return table;
}

const std::array<std::array<double, 7>, 8>& edge_bspline_knots()
{
  static const std::array<std::array<double, 7>, 8> windows = [] {
    const std::array<double, 14> full = {0, 0, 0, 0, 0, 0, 0.5,
                                         0.5, 1, 1, 1, 1, 1, 1};
    std::array<std::array<double, 7>, 8> w{};
    for (int i = 0; i < 8; ++i)
      std::copy(full.begin() + i, full.begin() + i + 7, w[i].begin());
    return w;
  }();
  return windows;
}

std::array<double, 8> edge_greville()
{
  std::array<double, 8> g{};
  const auto& w = edge_bspline_knots();
  for (int i = 0; i < 8; ++i) {
    double s = 0.0;
    for (int r = 1; r <= 5; ++r)
      s += w[i][r];
    g[i] = s / 5.0;
  }
  return g;
}

std::array<EdgeMatch, 8> boundary_reduction(const BasisInstance& b, int corner_a,
                                            int corner_b, int samples)
{
  if (corner_a < 0 || corner_a > 2 || corner_b < 0 || corner_b > 2 ||
      corner_a == corner_b)
    throw std::invalid_argument("boundary_reduction: not a macrotriangle edge");
  const Point pa = b.triangle().vertex(corner_a);
  const Point pb = b.triangle().vertex(corner_b);

  std::vector<double> ts(samples);
  std::vector<BasisValues> vals(samples);
  for (int i = 0; i < samples; ++i) {
    ts[i] = (i + 0.5) / samples;
    vals[i] = eval_all(b, (1 - ts[i]) * pa + ts[i] * pb);
  }

  std::array<EdgeMatch, 8> out{};
  int found = 0;
  std::array<bool, 8> used{};
  for (int j = 0; j < kBasisSize; ++j) {
    double peak = 0.0;
    for (const auto& v : vals)
      peak = std::max(peak, std::abs(v[j]));
    if (peak <= 1e-12)
      continue;
    if (found == 8)
      throw std::runtime_error("boundary_reduction: more than 8 nonzero restrictions");
    EdgeMatch best{j, -1, INFINITY};
    for (int k = 0; k < 8; ++k) {
      double err = 0.0;
      for (int i = 0; i < samples; ++i)
        err = std::max(err, std::abs(vals[i][j] -
                                     univariate_bspline(edge_bspline_knots()[k], ts[i])));
      if (err < best.max_error)
        best = {j, k, err};
    }
    if (best.max_error > 1e-10 || used[best.bspline_index])
      throw std::runtime_error("boundary_reduction: restriction does not match an edge B-spline");
    used[best.bspline_index] = true;
    out[found++] = best;
  }
  if (found != 8)
    throw std::runtime_error("boundary_reduction: expected 8 nonzero restrictions");
  return out;
}

SplineFunction::SplineFunction(BasisPtr basis, const BasisValues& coeffs)
    : basis_(std::move(basis)), coeffs_(coeffs)
{
  if (!basis_)
    throw std::invalid_argument("SplineFunction: null basis");
}

double SplineFunction::operator()(Point p) const
{
  const BasisValues v = eval_all(*basis_, p);
  double s = 0.0;
  for (int j = 0; j < kBasisSize; ++j)
    s += coeffs_[j] * v[j];
  return s;
}

double SplineFunction::derivative(std::span<const Point> directions, Point p) const
{
  const BasisValues v = eval_all_dirs(*basis_, p, directions);
  double s = 0.0;
  for (int j = 0; j < kBasisSize; ++j)
    s += coeffs_[j] * v[j];
  return s;
}

} // namespace ps12
