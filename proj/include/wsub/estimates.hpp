#ifndef WSUB_ESTIMATES_HPP
#define WSUB_ESTIMATES_HPP

#include "wsub/rational.hpp"

#include <cstddef>
#include <vector>

namespace wsub {

struct GaussianParams {
  double c = 1;
  double b = 1;
  double omega = 0;
  Rational m = 2;
  Rational q_star = 4;

  /// Throws std::invalid_argument unless c, b > 0, ω ≥ 0, m ≥ 2, Q* > 0.
  void validate() const;
};

/// c t^{−Q*/m} e^{ωt} exp(−b (r^m/t)^{1/(m−1)}).
double gaussian_envelope(double t, double r, const GaussianParams& p);
double log_gaussian_envelope(double t, double r, const GaussianParams& p);

/// Model ball volume: r^{Q*} for r ≤ 1, e^{β(r−1)} beyond.
struct VolumeModel {
  Rational q_star = 4;
  double beta = 1;

  void validate() const;
  double operator()(double r) const;
  double log_volume(double r) const;
};

struct SeriesBound {
  double partial = 0; // Σ_{j=1}^{terms}
  double tail = 0;    // certified upper bound for the remainder
  std::size_t terms = 0;
  double value() const { return partial + tail; }
};

/// Σ_{j≥1} exp(−2b·2^{j/(m−1)}) 2^{(j+1)Q*/m} with a certified tail below 1e-12.
///
/// Past the index where the terms decrease, the remainder is bounded by the
/// integral of the same expression in j, which the substitution y = 2^{j/(m−1)}
/// turns into an upper incomplete gamma function.
SeriesBound dyadic_series(double b, const Rational& m, const Rational& q_star);
/// Upper bound: partial sum plus certified tail.
double dyadic_series_bound(double b, const Rational& m, const Rational& q_star);

struct AnnuliRow {
  double t = 0;
  double integral = 0;       // I(t)
  double ratio = 0;          // I(t) / t^{Q*/m}
  double certified_tail = 0; // bound on the omitted annuli
  std::size_t annuli = 0;
  double model_excess = 0;   // ε_model: relative excess over pure polynomial volume
  double chain_bound = 0;    // (2t)^{Q*/m} (1 + dyadic series)(1 + ε_model)
  bool finite = false;       // tail certificate passed
  bool chain_holds = false;
  bool near_limit = false;   // within 10% of the small-t limit
};

struct AnnuliReport {
  std::vector<AnnuliRow> rows;
  double limit = 0;             // lim_{t→0} I(t)/t^{Q*/m}
  bool monotone_converging = false;
  bool converging = false;      // monotone and every ratio within 10% of the limit
  bool all_finite = false;
};

/// I(t) = Σ_j sup_{A_j} exp(−2b(r^m/t)^{1/(m−1)}) |A_j|, with A_0 the ball of
/// radius (2t)^{1/m} and A_j the shell between (2^j t)^{1/m} and (2^{j+1} t)^{1/m},
/// volumes from the model. This is the integral of the squared Gaussian factor,
/// so ‖k_t‖² ≤ c² t^{−2Q*/m} e^{2ωt} I(t). Only b, m and Q* of the parameters
/// enter.
AnnuliReport annuli_integral_check(const std::vector<double>& t_grid, const GaussianParams& p, const VolumeModel& v);

/// ((x²+y²)² + u²)^{1/4}, a homogeneous quasi-norm on H₁.
double h1_quasi_norm(double x, double y, double u);

struct EnvelopeFit {
  GaussianParams params;   // m = 2, Q* = 4, ω = 0
  double fit_margin = 0;   // min log(envelope/kernel) on the fitting grid
  double check_margin = 0; // same on the interleaved check grid
  double worst_t = 0, worst_norm = 0;
  std::size_t points = 0;
  bool dominated = false;
};

/// Fits c, b with ω = 0 so that the Gaussian envelope dominates the H₁ heat
/// kernel on t_points log-spaced times in [t_lo, t_hi] and norm_points quasi-norm
/// values in [0, norm_max], each along several directions in (|x|, u). b is half
/// the smallest observed decay rate −Δlog k / (|g|²/t); c is the smallest
/// constant that works for that b, times the safety factor. The interleaved
/// grid is checked but not used for fitting.
EnvelopeFit fit_h1_envelope(double t_lo, double t_hi, std::size_t t_points, double norm_max, std::size_t norm_points,
                            double safety = 1.1);

} // namespace wsub

#endif
