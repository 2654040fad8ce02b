#include "wsub/forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wsub {

Form::Form(std::vector<Rational> weights, const Coefficients& coefficients) : m_weights(std::move(weights))
{
  bool any = false;
  for (const auto& [alpha, value] : coefficients) {
    if (value.is_zero()) continue;
    Rational len = weighted_length(alpha, m_weights); // range-checks α
    if (!any || len > m_order) m_order = len;
    any = true;
    m_coeffs.emplace(alpha, value);
  }
  if (!any) throw std::invalid_argument("a form needs at least one non-zero coefficient");
}

ComplexRational Form::operator()(const MultiIndex& alpha) const
{
  auto it = m_coeffs.find(alpha);
  return it == m_coeffs.end() ? ComplexRational{} : it->second;
}

Form principal_part(const Form& c)
{
  Form::Coefficients top;
  for (const auto& [alpha, value] : c.coefficients())
    if (weighted_length(alpha, c.weights()) == c.order()) top.emplace(alpha, value);
  return Form(c.weights(), top);
}

bool is_homogeneous(const Form& c)
{
  return principal_part(c) == c;
}

Form adjoint(const Form& c)
{
  Form::Coefficients out;
  for (const auto& [alpha, value] : c.coefficients()) {
    MultiIndex reversed(alpha.rbegin(), alpha.rend());
    ComplexRational v = value.conj();
    if (alpha.size() % 2 == 1) v = {-v.re, -v.im};
    out.emplace(std::move(reversed), v);
  }
  return Form(c.weights(), out);
}

bool is_symmetric(const Form& c)
{
  return adjoint(c) == c;
}

Form sublaplacian_form(std::size_t generators)
{
  if (generators == 0) throw std::invalid_argument("sub-Laplacian needs at least one generator");
  Form::Coefficients coeffs;
  for (std::size_t j = 0; j < generators; ++j) coeffs.emplace(MultiIndex{j, j}, ComplexRational{-1, 0});
  return Form(std::vector<Rational>(generators, Rational(1)), coeffs);
}

Form rockland_power_form(const std::vector<Rational>& weights, const std::vector<Rational>& coefficients,
                         const Rational& order)
{
  if (weights.empty() || weights.size() != coefficients.size())
    throw std::invalid_argument("rockland_power_form: one coefficient per weight required");
  Form::Coefficients coeffs;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (sgn(coefficients[j]) <= 0) throw std::invalid_argument("rockland_power_form: coefficients must be positive");
    Rational half = order / (2 * weights[j]);
    if (half.get_den() != 1 || sgn(half) <= 0)
      throw std::invalid_argument("rockland_power_form: order " + to_string(order) + " is not in 2·" +
                                  to_string(weights[j]) + "·N");
    const unsigned long power = 2 * half.get_num().get_ui();
    Rational sign = (half.get_num().get_ui() % 2 == 0) ? 1 : -1;
    coeffs.emplace(MultiIndex(power, j), ComplexRational{sign * coefficients[j], 0});
  }
  return Form(weights, coeffs);
}

bool order_compatibility(const Form& c, const WeightedBasis& basis)
{
  Rational k = c.order() / (2 * basis.period());
  return k.get_den() == 1 && sgn(k) > 0;
}

//------------------------------------------------------------------------------
// Rockland screen on H₁
//------------------------------------------------------------------------------

Eigen::MatrixXcd heisenberg_schrodinger_block(const Form& c, double lambda, std::size_t truncation)
{
  if (c.basis_dim() > 3) throw std::invalid_argument("Heisenberg screen: form must live on (X, Y, Z)");
  if (lambda == 0) throw std::invalid_argument("Heisenberg screen: λ must be non-zero");
  using Mat = Eigen::MatrixXcd;
  using cd = std::complex<double>;

  std::size_t longest = 0;
  for (const auto& [alpha, value] : c.coefficients()) longest = std::max(longest, alpha.size());
  const auto dim = static_cast<Eigen::Index>(truncation + longest);

  // Ladder operator a|k> = √k |k−1> on the scaled Hermite functions h_k(√|λ| ξ).
  Mat a = Mat::Zero(dim, dim);
  for (Eigen::Index k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const double s = std::abs(lambda);
  const Mat ad = a.adjoint();
  const Mat x = std::sqrt(s / 2) * (a - ad);                      // d/dξ
  const Mat y = cd(0, lambda) * (a + ad) / std::sqrt(2 * s);      // iλξ
  const Mat z = cd(0, lambda) * Mat::Identity(dim, dim);          // iλ
  const Mat* gens[3] = {&x, &y, &z};

  Mat total = Mat::Zero(dim, dim);
  for (const auto& [alpha, value] : c.coefficients()) {
    Mat term = Mat::Identity(dim, dim);
    for (auto idx : alpha) term = term * (*gens[idx]);
    total += value.to_complex() * term;
  }
  const auto n = static_cast<Eigen::Index>(truncation);
  return total.topLeftCorner(n, n);
}

RocklandScreen heisenberg_rockland_check(const Form& c, std::size_t truncation, const std::vector<double>& lambdas,
                                         std::size_t circle_points, double tol)
{
  if (truncation < 4) throw std::invalid_argument("Heisenberg screen: truncation must be at least 4");
  if (lambdas.empty() || circle_points == 0) throw std::invalid_argument("Heisenberg screen: empty grid");
  RocklandScreen out;

  for (double lambda : lambdas) {
    Eigen::MatrixXcd block = heisenberg_schrodinger_block(c, lambda, truncation);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
    const double smin = svd.singularValues().minCoeff();
    const double scale = std::max(1.0, svd.singularValues().maxCoeff());
    out.hermite_min_singular.emplace_back(lambda, smin);
    if (smin <= tol * scale && out.passes) {
      out.passes = false;
      out.failing_lambda = lambda;
    }
  }

  // Characters: X ↦ ia, Y ↦ ib, Z ↦ 0 for (a, b) on the unit circle.
  double scale = 0;
  for (const auto& [alpha, value] : c.coefficients()) scale = std::max(scale, std::abs(value.to_complex()));
  out.character_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < circle_points; ++k) {
    const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(circle_points);
    const double a = std::cos(theta), b = std::sin(theta);
    const std::complex<double> chi[3] = {{0, a}, {0, b}, {0, 0}};
    std::complex<double> symbol = 0;
    for (const auto& [alpha, value] : c.coefficients()) {
      std::complex<double> term = value.to_complex();
      for (auto idx : alpha) term *= chi[idx];
      symbol += term;
    }
    const double mag = std::abs(symbol);
    out.character_min = std::min(out.character_min, mag);
    if (mag <= tol * std::max(1.0, scale) && !out.failing_character) {
      out.passes = false;
      out.failing_character = {a, b};
    }
  }
  return out;
}

} // namespace wsub
