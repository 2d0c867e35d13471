#include "ps12/smooth_join.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ps12
{

namespace
{
int layout_position(const std::array<int, 3>& d)
{
  static const std::map<std::array<int, 3>, int> pos = [] {
    std::map<std::array<int, 3>, int> m;
    const auto& layout = canonical_domain_layout();
    for (int k = 0; k < kBasisSize; ++k)
      m[layout[k]] = k;
    return m;
  }();
  const auto it = pos.find(d);
  if (it == pos.end())
    throw std::logic_error("domain point missing from the canonical layout");
  return it->second;
}
} // namespace

OrderingMap ordering(const BasisInstance& basis, int a, int b)
{
  if (a < 0 || a > 2 || b < 0 || b > 2 || a == b)
    throw std::invalid_argument("ordering: edge corners must be distinct in 0..2");
  OrderingMap o;
  o.a = a;
  o.b = b;
  o.c = 3 - a - b;
  for (int j = 0; j < kBasisSize; ++j) {
    const auto& d = basis[j].domain30;
    const int k = layout_position({d[o.a], d[o.b], d[o.c]});
    o.to_basis[k] = j;
    o.from_basis[j] = k;
  }
  return o;
}

int mirror_index(int k)
{
  const auto& d = canonical_domain_layout().at(k);
  return layout_position({d[1], d[0], d[2]});
}

std::array<double, kBasisSize> ConstraintRow::evaluate(const Barycentric& beta) const
{
  std::array<double, kBasisSize> r{};
  for (const auto& t : terms)
    r[t.index] += t.coeff * std::pow(beta[0], t.power[0]) *
                  std::pow(beta[1], t.power[1]) * std::pow(beta[2], t.power[2]);
  return r;
}

std::string ConstraintRow::to_string() const
{
  // Groups terms by beta monomial: "c~10 = b1*(1*c2) + b2*(1*c3) + ...".
  std::map<std::array<int, 3>, std::vector<const ConstraintTerm*>, std::greater<>> groups;
  for (const auto& t : terms)
    groups[t.power].push_back(&t);
  std::ostringstream os;
  os << "c~" << target + 1 << " =";
  bool first = true;
  for (const auto& [p, ts] : groups) {
    os << (first ? " " : " + ");
    first = false;
    for (int i = 0; i < 3; ++i)
      if (p[i] > 0)
        os << "b" << i + 1 << (p[i] > 1 ? "^" + std::to_string(p[i]) : "") << "*";
    os << "(";
    for (std::size_t n = 0; n < ts.size(); ++n) {
      const double c = ts[n]->coeff;
      if (n > 0)
        os << (c < 0 ? " - " : " + ");
      else if (c < 0)
        os << "-";
      os << std::abs(c) << "*c" << ts[n]->index + 1;
    }
    os << ")";
  }
  return os.str();
}

ConstraintRow mirror(const ConstraintRow& row)
{
  ConstraintRow m{mirror_index(row.target), {}};
  for (const auto& t : row.terms)
    m.terms.push_back({t.coeff, {t.power[1], t.power[0], t.power[2]}, mirror_index(t.index)});
  return m;
}

namespace
{
// Builds a row from 1-based indices, as the conditions are usually written.
class RowBuilder
{
public:
  explicit RowBuilder(int target1) : row_{target1 - 1, {}} {}
  RowBuilder& add(double coeff, std::array<int, 3> power, int index1)
  {
    row_.terms.push_back({coeff, power, index1 - 1});
    return *this;
  }
  ConstraintRow done() { return std::move(row_); }

private:
  ConstraintRow row_;
};

constexpr std::array<int, 3> B1{1, 0, 0}, B2{0, 1, 0}, B3{0, 0, 1};
constexpr std::array<int, 3> B11{2, 0, 0}, B22{0, 2, 0}, B33{0, 0, 2};
constexpr std::array<int, 3> B12{1, 1, 0}, B13{1, 0, 1}, B23{0, 1, 1};

std::vector<ConstraintRow> first_order_rows()
{
  std::vector<ConstraintRow> r;
  r.push_back(RowBuilder(9).add(1, B1, 1).add(1, B2, 2).add(1, B3, 9).done());
  r.push_back(RowBuilder(10).add(1, B1, 2).add(1, B2, 3).add(1, B3, 10).done());
  r.push_back(RowBuilder(11).add(2, B1, 3).add(-1, B1, 2).add(1, B2, 4).add(1, B3, 11).done());
  r.push_back(RowBuilder(12)
                  .add(2.0 / 3, B1, 4)
                  .add(1.0 / 3, B1, 5)
                  .add(1.0 / 3, B2, 4)
                  .add(2.0 / 3, B2, 5)
                  .add(1, B3, 12)
                  .done());
  return r;
}

std::vector<ConstraintRow> second_order_rows()
{
  std::vector<ConstraintRow> r;
  r.push_back(RowBuilder(16)
                  .add(1, B11, 1)
                  .add(2, B12, 2)
                  .add(1, B22, 3)
                  .add(2, B13, 9)
                  .add(2, B23, 10)
                  .add(1, B33, 16)
                  .done());
  // 2 b1 b2 (3c3 - c2)/2 and so on: the factor 2 cancels the halves.
  r.push_back(RowBuilder(17)
                  .add(1, B11, 2)
                  .add(1, B22, 4)
                  .add(1, B33, 17)
                  .add(3, B12, 3)
                  .add(-1, B12, 2)
                  .add(3, B13, 10)
                  .add(-1, B13, 2)
                  .add(1, B23, 10)
                  .add(2, B23, 11)
                  .add(-1, B23, 3)
                  .done());
  r.push_back(RowBuilder(18)
                  .add(2.0 / 3, B11, 3)
                  .add(2.0 / 3, B11, 4)
                  .add(-1.0 / 3, B11, 2)
                  .add(1.0 / 3, B22, 4)
                  .add(2.0 / 3, B22, 5)
                  .add(1, B33, 18)
                  .add(1.0 / 3, B12, 2)
                  .add(-2.0 / 3, B12, 3)
                  .add(2, B12, 4)
                  .add(1.0 / 3, B12, 5)
                  .add(1.0 / 3, B13, 2)
                  .add(-2.0 / 3, B13, 3)
                  .add(2.0 / 3, B13, 4)
                  .add(-1.0 / 3, B13, 5)
                  .add(1, B13, 11)
                  .add(1, B13, 12)
                  .add(3, B23, 12)
                  .add(-2.0 / 3, B23, 5)
                  .add(-1.0 / 3, B23, 11)
                  .done());
  return r;
}
} // namespace

SmoothnessConstraints::SmoothnessConstraints(int order) : order_(order)
{
  if (order < 0 || order > 2)
    throw std::invalid_argument("smoothness order must be 0, 1 or 2");

  for (int i = 1; i <= 8; ++i)
    rows_.push_back(RowBuilder(i).add(1, {0, 0, 0}, i).done());

  auto add_with_mirrors = [this](std::vector<ConstraintRow> listed) {
    const std::size_t start = rows_.size();
    for (auto& r : listed)
      rows_.push_back(std::move(r));
    const std::size_t end = rows_.size();
    for (std::size_t i = start; i < end; ++i) {
      ConstraintRow m = mirror(rows_[i]);
      if (m.target != rows_[i].target)
        rows_.push_back(std::move(m));
    }
  };
  if (order >= 1)
    add_with_mirrors(first_order_rows());
  if (order >= 2)
    add_with_mirrors(second_order_rows());

  std::sort(rows_.begin(), rows_.end(),
            [](const ConstraintRow& x, const ConstraintRow& y) { return x.target < y.target; });
}

const ConstraintRow* SmoothnessConstraints::row(int target) const
{
  for (const auto& r : rows_)
    if (r.target == target)
      return &r;
  return nullptr;
}

EdgeJoin::EdgeJoin(Point v1, Point v2, Point v3, Point v3_tilde)
    : basis_(instantiate(MacroTriangle(v1, v2, v3))),
      basis_tilde_(instantiate(MacroTriangle(v1, v2, v3_tilde))),
      beta_(barycentric(basis_->triangle(), v3_tilde))
{
}

PartialCoefficients propagate(const BasisValues& c, const Barycentric& beta, int order)
{
  const SmoothnessConstraints cons(order);
  PartialCoefficients out;
  for (const auto& r : cons.rows()) {
    const auto w = r.evaluate(beta);
    double v = 0.0;
    for (int j = 0; j < kBasisSize; ++j)
      v += w[j] * c[j];
    out[r.target] = v;
  }
  return out;
}

void apply_forced(BasisValues& c_tilde, const PartialCoefficients& forced)
{
  for (int j = 0; j < kBasisSize; ++j)
    if (forced[j])
      c_tilde[j] = *forced[j];
}

double JumpReport::relative() const
{
  double r = 0.0;
  for (int k = 0; k <= order; ++k)
    r = std::max(r, scale[k] > 0 ? jump[k] / scale[k] : jump[k]);
  return r;
}

JumpReport verify_join(const SplineFunction& f, const SplineFunction& f_tilde,
                       int order, int samples)
{
  if (order < 0 || order > 2)
    throw std::invalid_argument("verify_join: order must be 0, 1 or 2");
  if (samples < 1)
    throw std::invalid_argument("verify_join: need at least one sample");

  const MacroTriangle& t = f.basis().triangle();
  const MacroTriangle& tt = f_tilde.basis().triangle();
  const double tol = 1e-12 * std::max(t.diameter(), tt.diameter());
  std::vector<Point> shared;
  for (const Point& p : t.vertices())
    for (const Point& q : tt.vertices())
      if (norm(p - q) <= tol)
        shared.push_back(p);
  if (shared.size() != 2)
    throw std::invalid_argument("verify_join: triangles must share exactly one edge");

  const Point a = shared[0], b = shared[1];
  const double len = norm(b - a);

  JumpReport rep;
  rep.order = order;
  rep.samples = samples;
  double cmax = 0.0;
  for (double v : f.coeffs())
    cmax = std::max(cmax, std::abs(v));
  for (double v : f_tilde.coeffs())
    cmax = std::max(cmax, std::abs(v));
  for (int k = 0; k < 3; ++k)
    rep.scale[k] = cmax / std::pow(len, k);

  // Parameters in (0.02, 0.48) and (0.52, 0.98), away from the corners and
  // the midpoint where the split lines meet the edge.
  std::vector<double> ts(samples);
  for (int i = 0; i < samples; ++i) {
    const double u = (i + 0.5) / samples;
    ts[i] = u < 0.5 ? 0.02 + 0.92 * u : 0.52 + 0.92 * (u - 0.5);
  }

  std::vector<std::array<double, 3>> per_point(samples);
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < samples; ++i) {
    const Point p = a + ts[i] * (b - a);
    const DerivativeTable d = eval_all_derivs(f.basis(), p, order);
    const DerivativeTable dt = eval_all_derivs(f_tilde.basis(), p, order);
    std::array<double, 3> jk{};
    for (int k = 0; k <= order; ++k)
      for (int x = 0; x <= k; ++x) {
        double s = 0.0, st = 0.0;
        const auto& row = d.at(x, k - x);
        const auto& rowt = dt.at(x, k - x);
        for (int j = 0; j < kBasisSize; ++j) {
          s += f.coeffs()[j] * row[j];
          st += f_tilde.coeffs()[j] * rowt[j];
        }
        jk[k] = std::max(jk[k], std::abs(s - st));
      }
    per_point[i] = jk;
  }
  for (const auto& jk : per_point)
    for (int k = 0; k < 3; ++k)
      rep.jump[k] = std::max(rep.jump[k], jk[k]);
  return rep;
}

} // namespace ps12
