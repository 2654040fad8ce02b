#ifndef WSUB_FORMS_HPP
#define WSUB_FORMS_HPP

#include "wsub/lie_algebra.hpp"
#include "wsub/weighted.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace wsub {

struct ComplexRational {
  Rational re;
  Rational im;

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  ComplexRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) { return a.re == b.re && a.im == b.im; }
};

/// Coefficient map α ↦ C(α) on multi-indices over a weighted basis.
///
/// The order m is the largest weighted length carrying a non-zero
/// coefficient; zero coefficients are never stored.
class Form {
public:
  using Coefficients = std::map<MultiIndex, ComplexRational>;

  Form(std::vector<Rational> weights, const Coefficients& coefficients);

  const std::vector<Rational>& weights() const { return m_weights; }
  std::size_t basis_dim() const { return m_weights.size(); }
  const Rational& order() const { return m_order; }
  const Coefficients& coefficients() const { return m_coeffs; }
  /// Zero for multi-indices outside the support.
  ComplexRational operator()(const MultiIndex& alpha) const;

  friend bool operator==(const Form& a, const Form& b)
  {
    return a.m_weights == b.m_weights && a.m_coeffs == b.m_coeffs;
  }

private:
  std::vector<Rational> m_weights;
  Coefficients m_coeffs;
  Rational m_order;
};

/// Terms of weighted length exactly m.
Form principal_part(const Form& c);
bool is_homogeneous(const Form& c);

/// C⁺(α) = (−1)^{|α|} conj(C(α reversed)).
Form adjoint(const Form& c);
bool is_symmetric(const Form& c);

/// Form of the positive operator −(X_1² + … + X_d²), all weights 1.
Form sublaplacian_form(std::size_t generators);

/// Σ_j (−1)^{m/(2u_j)} c_j X_j^{m/u_j}; requires m ∈ 2u_j·ℕ and c_j > 0.
Form rockland_power_form(const std::vector<Rational>& weights, const std::vector<Rational>& coefficients,
                         const Rational& order);

/// m ∈ 2w·ℕ for the period w of the basis weights.
bool order_compatibility(const Form& c, const WeightedBasis& basis);

struct RocklandScreen {
  bool passes = true;
  std::vector<std::pair<double, double>> hermite_min_singular; // (λ, σ_min of the truncated block)
  double character_min = 0;                                    // min |symbol| over the character grid
  std::optional<double> failing_lambda;
  std::optional<std::pair<double, double>> failing_character;  // (a, b)
};

/// Truncated image of a form under the Schrödinger representation of H₁
/// (canonical basis X, Y, Z with [X, Y] = Z), acting on the first N Hermite
/// functions:
///
///   π_λ(X) = d/dξ,   π_λ(Y) = iλξ,   π_λ(Z) = iλ.
///
/// Products are formed in N + |α|max dimensions before cropping, so
/// polynomials in the ladder operators are represented exactly on the block.
Eigen::MatrixXcd heisenberg_schrodinger_block(const Form& c, double lambda, std::size_t truncation);

/// Necessary-condition screen for the Rockland property on H₁: the truncated
/// Schrödinger blocks at each λ and the characters X ↦ ia, Y ↦ ib, Z ↦ 0 on
/// a grid of the unit circle must all be non-singular.
RocklandScreen heisenberg_rockland_check(const Form& c, std::size_t truncation, const std::vector<double>& lambdas,
                                         std::size_t circle_points = 64, double tol = 1e-9);

} // namespace wsub

#endif
