#include "ps12/hermite_nodal.hpp"

#include <cmath>
#include <stdexcept>

namespace ps12
{

NodalFunctional NodalFunctional::value(Point p, std::string label)
{
  return {p, {}, std::move(label)};
}

NodalFunctional NodalFunctional::derivative(Point p, std::vector<Point> dirs,
                                            std::string label)
{
  if (dirs.empty() || dirs.size() > 3)
    throw std::invalid_argument("nodal derivative order must be 1..3");
  return {p, std::move(dirs), std::move(label)};
}

BasisValues NodalFunctional::on_basis(const BasisInstance& b) const
{
  if (directions.empty())
    return eval_all(b, anchor);
  return eval_all_dirs(b, anchor, directions);
}

double NodalFunctional::operator()(const SplineFunction& s) const
{
  const BasisValues v = on_basis(s.basis());
  double r = 0.0;
  for (int j = 0; j < kBasisSize; ++j)
    r += s.coeffs()[j] * v[j];
  return r;
}

const std::array<GlyphTerm, 16>& eps_v1_terms()
{
  static const std::array<GlyphTerm, 16> terms = {{
      {"600101", 1.0 / 4},
      {"500201", 1.0 / 4},
      {"500102", 1.0 / 4},
      {"410201", 1.0 / 2},
      {"401102", 1.0 / 2},
      {"411101", 1.0},
      {"311201", 1.0 / 2},
      {"311102", 1.0 / 2},
      {"320201", 1.0 / 2},
      {"302102", 1.0 / 2},
      {"211211", 9.0 / 16},
      {"211112", 9.0 / 16},
      {"220211", 3.0 / 8},
      {"202112", 3.0 / 8},
      {"112112", 3.0 / 16},
      {"121211", 3.0 / 16},
  }};
  return terms;
}

SplineFunction eps_vertex(const BasisPtr& b, int corner)
{
  if (corner < 0 || corner > 2)
    throw std::invalid_argument("corner must be 0, 1 or 2");
  const Permutation sigma({corner, (corner + 1) % 3, (corner + 2) % 3});
  BasisValues c{};
  for (const auto& t : eps_v1_terms()) {
    const int j = b->index_of(act(sigma, MultiplicityVector::parse(t.glyph)));
    if (j < 0)
      throw std::logic_error(std::string("glyph not in the basis: ") + t.glyph);
    c[j] += t.coeff / (*b)[j].weight;
  }
  return SplineFunction(b, c);
}

SplineFunction eps_v1(const BasisPtr& b)
{
  return eps_vertex(b, 0);
}

ConversionMatrix::ConversionMatrix(const BasisPtr& b,
                                   std::span<const NodalFunctional> functionals)
    : b_(b), functionals_(functionals.begin(), functionals.end())
{
  if (!b_)
    throw std::invalid_argument("conversion_matrix: null basis");
  if (functionals_.size() != static_cast<std::size_t>(kBasisSize))
    throw std::invalid_argument("conversion_matrix: need exactly 39 functionals");
  for (int i = 0; i < kBasisSize; ++i) {
    const BasisValues row = functionals_[i].on_basis(*b_);
    for (int j = 0; j < kBasisSize; ++j)
      g_(i, j) = row[j];
  }

  // Derivative rows scale like h^-k; equilibrate before judging the rank.
  Matrix scaled = g_;
  for (int i = 0; i < kBasisSize; ++i) {
    const double m = scaled.row(i).cwiseAbs().maxCoeff();
    if (m > 0)
      scaled.row(i) /= m;
  }
  const Eigen::FullPivLU<Matrix> probe(scaled);
  const auto diag = probe.matrixLU().diagonal().cwiseAbs();
  pivot_ratio_ = diag.minCoeff() / diag.maxCoeff();
  if (!(pivot_ratio_ > 1e-11))
    throw std::runtime_error("functional set is not unisolvent (singular conversion matrix)");
  lu_.compute(g_);
}

BasisValues ConversionMatrix::coefficients(const BasisValues& values) const
{
  using Vec = Eigen::Matrix<double, kBasisSize, 1>;
  const Vec rhs = Eigen::Map<const Vec>(values.data());
  Vec x = lu_.solve(rhs);
  x += lu_.solve(Vec(rhs - g_ * x));
  BasisValues out;
  Eigen::Map<Vec>(out.data()) = x;
  return out;
}

BasisValues ConversionMatrix::nodal_values(const SplineFunction& s) const
{
  BasisValues v;
  for (int i = 0; i < kBasisSize; ++i)
    v[i] = functionals_[i](s);
  return v;
}

SplineFunction ConversionMatrix::nodal_function(int k) const
{
  if (k < 0 || k >= kBasisSize)
    throw std::out_of_range("nodal_function: index out of range");
  BasisValues e{};
  e[k] = 1.0;
  return SplineFunction(b_, coefficients(e));
}

ConversionMatrix conversion_matrix(const BasisPtr& b,
                                   std::span<const NodalFunctional> functionals)
{
  return ConversionMatrix(b, functionals);
}

double nodal_residual(const SplineFunction& g,
                      std::span<const NodalFunctional> functionals, int unit_index)
{
  double r = 0.0;
  for (std::size_t k = 0; k < functionals.size(); ++k) {
    const double target = static_cast<int>(k) == unit_index ? 1.0 : 0.0;
    r = std::max(r, std::abs(functionals[k](g) - target));
  }
  return r;
}

} // namespace ps12
