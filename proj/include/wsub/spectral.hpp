#ifndef WSUB_SPECTRAL_HPP
#define WSUB_SPECTRAL_HPP

#include "wsub/rational.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wsub {

/// Raised when an adaptive quadrature cannot reach its error target.
class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Group with computable spectral data for its positive sub-Laplacian.
///
/// Normalizations:
///   torus(n)    probability Haar measure on [0,1)^n, operator −Δ with
///               eigenvalues |2πξ|², ξ ∈ ℤⁿ
///   heisenberg  Lebesgue measure dx dy du on ℝ³ (exponential coordinates),
///               −((∂x − y/2 ∂u)² + (∂y + x/2 ∂u)²)
///   su2         probability Haar measure, −(X1² + X2²) for the basis
///               [X1, X2] = X3 and cyclic; integer spins l only
///
/// Q* and m are not entered by hand: they come from contracting the catalog
/// algebra with its canonical generators and from the order of the
/// sub-Laplacian form.
class SpectralBackend {
public:
  enum class Kind { Torus, Heisenberg, Su2 };

  static SpectralBackend torus(std::size_t n);
  static SpectralBackend heisenberg();
  static SpectralBackend su2();
  /// "torus3", "torus(3)", "heisenberg", "h1", "su2".
  static SpectralBackend parse(const std::string& name);

  Kind kind() const { return m_kind; }
  std::size_t torus_dim() const { return m_torus_dim; }
  const Rational& q_star() const { return m_q_star; }
  const Rational& order() const { return m_order; }
  /// Q*/m, the growth exponent of the spectral projector trace.
  Rational growth_exponent() const { return m_q_star / m_order; }
  std::string name() const;
  std::string normalization() const;

private:
  SpectralBackend(Kind kind, std::size_t torus_dim, const std::string& catalog_name);

  Kind m_kind;
  std::size_t m_torus_dim = 0;
  Rational m_q_star;
  Rational m_order;
};

/// τ(E_(0,s)): spectral projector trace on the open interval (0, s), so the
/// zero eigenvalue is never counted.
double counting_function(const SpectralBackend& backend, double s);

/// κ in τ(E_(0,s)) = κ s² on H₁, from the Plancherel decomposition: the
/// Schrödinger representations π_λ carry density |λ|/(4π²) dλ and
/// eigenvalues (2k+1)|λ|, so κ = (4π²)⁻¹ Σ_k (2k+1)⁻².
double heisenberg_counting_constant();

struct Eigenvalue {
  std::int64_t value;
  std::int64_t multiplicity;
  friend bool operator==(const Eigenvalue&, const Eigenvalue&) = default;
};

/// Spectrum of −(X1² + X2²) on SU(2) restricted to spins l ≤ l_max:
/// l(l+1) − m² with multiplicity 2l+1, aggregated and sorted.
std::vector<Eigenvalue> su2_sublaplacian_spectrum(std::int64_t l_max);

/// Heat kernel of the H₁ sub-Laplacian at (x, y, u):
///
///   k_t = (2π)⁻¹ ∫ e^{iλu} λ / (4π sinh(λt)) exp(−λ coth(λt) (x²+y²) / 4) dλ,
///
/// the Fourier inversion in u of the Mehler kernel of the magnetic Laplacian
/// with field λ. The λ contour is shifted to the saddle height so that far
/// from the origin the integral is computed without cancellation.
double h1_heat_kernel(double t, double x, double y, double u);
/// Logarithm of the same, finite even where the kernel underflows.
double h1_log_heat_kernel(double t, double x, double y, double u);

/// ‖k_t‖²_{L²} = ∫ e^{−2tλ} dμ(λ), μ the measure with distribution function
/// counting_function (zero mode excluded).
double heat_trace_l2(const SpectralBackend& backend, double t);

struct PowerFit {
  double exponent = 0;
  double log_intercept = 0;
  double residual = 0; // max |log v − fit| over the samples
};

/// Least squares on (log s, log v).
PowerFit fit_power_exponent(const std::vector<std::pair<double, double>>& samples);

/// n points per decade, log-uniform, both endpoints included.
std::vector<double> log_grid(double from, double to, std::size_t per_decade = 20);

struct GrowthReport {
  std::string backend;
  std::vector<std::pair<double, double>> samples;
  double fitted_exponent = 0;
  Rational target;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
};

GrowthReport verify_growth(const SpectralBackend& backend, const std::vector<double>& s_grid, double tolerance = 0.05);

/// Decreasing multiplier φ on [0, ∞) with φ(0) = 1 and φ → 0.
class MultiplierSpec {
public:
  /// φ(λ) = e^{−sλ}.
  static MultiplierSpec exponential(double s);
  /// φ(λ) = (1+λ)^{−k}.
  static MultiplierSpec inverse_power(double k);
  /// Piecewise linear through (λ_i, φ_i), λ_0 = 0; the supremum is taken over
  /// the tabulated range only.
  static MultiplierSpec tabulated(std::vector<double> lambdas, std::vector<double> values);

  double operator()(double lambda) const { return m_eval(lambda); }
  const std::string& name() const { return m_name; }
  double range_end() const { return m_range_end; }

private:
  MultiplierSpec(std::string name, std::function<double(double)> eval, double range_end);
  std::string m_name;
  std::function<double(double)> m_eval;
  double m_range_end;
};

/// a = (Q*/m)(1/p − 1/q) with 1 < p ≤ 2 ≤ q < ∞ enforced.
double lp_lq_exponent(double p, double q, const Rational& q_star, const Rational& order);

/// sup_{λ>0} φ(λ) λ^a with a = (Q*/m)(1/p − 1/q).
double multiplier_norm_bound(const MultiplierSpec& phi, double p, double q, const Rational& q_star,
                             const Rational& order, double rel_tol = 1e-6);
/// Same with the exponent given directly (a ≥ 0).
double multiplier_sup(const MultiplierSpec& phi, double exponent, double rel_tol = 1e-6);

/// s^{−(Q*/m)(1/p − 1/q)} with unit constant.
double heat_lp_lq_bound(double s, double p, double q, const Rational& q_star, const Rational& order);

struct EmbeddingWitness {
  double max_ratio = 0;
  std::size_t best_trial = 0;
  std::vector<double> ratios;
};

/// Lower-bound certificate for the embedding constant of
/// ‖f‖_q ≤ C ‖(1+Δ)^γ f‖_p on the n-torus: the largest ratio over seeded
/// random trigonometric polynomials with frequencies |ξ|_∞ ≤ cutoff, norms
/// evaluated on a grid oversampled 4× per dimension.
EmbeddingWitness torus_embedding_witness(std::size_t n, double p, double q, double gamma, std::size_t trials,
                                         std::size_t freq_cutoff, std::uint64_t seed);

} // namespace wsub

#endif
