#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wsub/spectral.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <map>
#include <numbers>

using namespace wsub;

namespace {

constexpr double pi = std::numbers::pi;

// Brute-force count of ξ ∈ [−R, R]ⁿ with 0 < 4π²|ξ|² < s.
double lattice_oracle(int n, double s)
{
  const int r = static_cast<int>(std::sqrt(s) / (2 * pi)) + 2;
  double count = 0;
  std::vector<int> xi(n, -r);
  while (true) {
    double e = 0;
    for (int v : xi) e += 4 * pi * pi * v * v;
    if (e > 0 && e < s) count += 1;
    int d = 0;
    while (d < n && ++xi[d] > r) xi[d++] = -r;
    if (d == n) break;
  }
  return count;
}

// Eigenvalues of J_x² + J_y² in the spin-l representation, built from J±.
std::vector<double> spin_block_eigenvalues(int l)
{
  const int dim = 2 * l + 1;
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) {
    double m = -l + k;
    jp(k + 1, k) = std::sqrt(l * (l + 1.0) - m * (m + 1));
  }
  Eigen::MatrixXd jm = jp.transpose();
  Eigen::MatrixXd jx = (jp + jm) / 2;
  Eigen::MatrixXd jy_sq = -((jp - jm) * (jp - jm)) / 4; // (J+ − J−)/(2i) squared
  Eigen::MatrixXd op = jx * jx + jy_sq;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + dim);
  return out;
}

} // namespace

TEST_CASE("backend exponents come from the contraction")
{
  CHECK(SpectralBackend::torus(1).q_star() == 1);
  CHECK(SpectralBackend::torus(3).growth_exponent() == Rational(3, 2));
  CHECK(SpectralBackend::heisenberg().q_star() == 4);
  CHECK(SpectralBackend::heisenberg().order() == 2);
  CHECK(SpectralBackend::su2().growth_exponent() == 2);
  CHECK(SpectralBackend::parse("torus(2)").torus_dim() == 2);
  CHECK(SpectralBackend::parse("H1").kind() == SpectralBackend::Kind::Heisenberg);
  CHECK_THROWS_AS(SpectralBackend::parse("torus"), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBackend::parse("sl2r"), std::invalid_argument);
}

TEST_CASE("torus counting matches lattice enumeration")
{
  CHECK(counting_function(SpectralBackend::torus(1), 40) == 2);
  for (int n : {1, 2, 3})
    for (double s : {10.0, 39.4, 39.5, 200.0, 1000.0, 3000.0})
      CHECK(counting_function(SpectralBackend::torus(n), s) == lattice_oracle(n, s));
}

TEST_CASE("su2 spectrum")
{
  std::vector<Eigenvalue> expected{{0, 1}, {1, 6}, {2, 3}};
  CHECK(su2_sublaplacian_spectrum(1) == expected);

  // Irrep matrices reproduce l(l+1) − m².
  for (int l = 0; l <= 6; ++l) {
    auto ev = spin_block_eigenvalues(l);
    std::vector<double> formula;
    for (int m = -l; m <= l; ++m) formula.push_back(l * (l + 1.0) - m * m);
    std::sort(formula.begin(), formula.end());
    for (std::size_t i = 0; i < ev.size(); ++i) CHECK(ev[i] == doctest::Approx(formula[i]).epsilon(1e-10));
  }

  // Counting function against the enumerated spectrum.
  auto spec = su2_sublaplacian_spectrum(80);
  for (double s : {0.5, 1.0, 1.5, 7.0, 30.5, 79.0}) {
    double total = 0;
    for (auto [v, k] : spec)
      if (v > 0 && static_cast<double>(v) < s) total += static_cast<double>(k);
    CHECK(counting_function(SpectralBackend::su2(), s) == total);
  }
}

TEST_CASE("heisenberg counting constant")
{
  CHECK(heisenberg_counting_constant() == doctest::Approx(1.0 / 32).epsilon(1e-12));
  CHECK(counting_function(SpectralBackend::heisenberg(), 4) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("growth exponents on [1e3, 1e6]")
{
  auto grid = log_grid(1e3, 1e6);
  CHECK(grid.size() == 61);
  for (const char* name : {"torus1", "torus2", "torus3", "heisenberg", "su2"}) {
    SpectralBackend b = SpectralBackend::parse(name);
    GrowthReport rep = verify_growth(b, grid);
    INFO(name << " fitted " << rep.fitted_exponent);
    CHECK(rep.pass);
    CHECK(std::abs(rep.fitted_exponent - to_double(b.growth_exponent())) <= 0.05);
  }
  CHECK_THROWS_AS(verify_growth(SpectralBackend::torus(1), {1e3, 2e3}), std::invalid_argument);
  CHECK_THROWS_AS(verify_growth(SpectralBackend::torus(1), {1e5, 1e3, 1e6}), std::invalid_argument);
}

TEST_CASE("power fit recovers exact power laws")
{
  std::vector<std::pair<double, double>> samples;
  for (double s : log_grid(1, 1e4, 5)) samples.emplace_back(s, 3 * std::pow(s, 1.7));
  PowerFit fit = fit_power_exponent(samples);
  CHECK(fit.exponent == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(fit.log_intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  CHECK(fit.residual < 1e-10);
}

TEST_CASE("torus heat trace agrees with Poisson summation")
{
  for (double t : {1e-4, 1e-3, 0.01, 0.1, 1.0}) {
    double dual = 0;
    for (int k = -50; k <= 50; ++k) dual += std::exp(-k * k / (8 * t));
    const double theta = dual / std::sqrt(8 * pi * t);
    for (int n : {1, 2, 3})
      CHECK(heat_trace_l2(SpectralBackend::torus(n), t) ==
            doctest::Approx(std::pow(theta, n) - 1).epsilon(1e-9));
  }
  std::vector<std::pair<double, double>> samples;
  for (double t : log_grid(1e-7, 1e-4, 10)) samples.emplace_back(t, heat_trace_l2(SpectralBackend::torus(1), t));
  CHECK(std::abs(fit_power_exponent(samples).exponent + 0.5) < 0.05);
}

TEST_CASE("heat trace is the Laplace-Stieltjes transform of the counting function")
{
  // ∫ e^{−2tλ} dN(λ) = 2t ∫₀^∞ e^{−2tλ} N(λ) dλ, summed over unit cells.
  for (const char* name : {"torus2", "su2"}) {
    SpectralBackend b = SpectralBackend::parse(name);
    for (double t : {0.05, 0.3}) {
      double total = 0;
      const double step = 0.25;
      for (double lo = 0; lo < 60 / t; lo += step) {
        auto f = [&](double l) { return 2 * t * std::exp(-2 * t * l) * counting_function(b, l); };
        // N is piecewise constant; a fine midpoint rule per cell is exact up to jumps.
        double cell = 0;
        for (int i = 0; i < 64; ++i) cell += f(lo + (i + 0.5) * step / 64);
        total += cell * step / 64;
      }
      INFO(name << " t=" << t);
      CHECK(heat_trace_l2(b, t) == doctest::Approx(total).epsilon(2e-3));
    }
  }
}

TEST_CASE("H1 heat kernel")
{
  // Value at the origin: ∫ μ/sinh μ dμ = π²/2.
  for (double t : {0.3, 1.0, 2.5}) CHECK(h1_heat_kernel(t, 0, 0, 0) == doctest::Approx(1 / (16 * t * t)).epsilon(1e-9));
  // ‖k_t‖² = k_{2t}(e) matches the spectral trace.
  for (double t : {0.5, 1.0})
    CHECK(heat_trace_l2(SpectralBackend::heisenberg(), t) == doctest::Approx(h1_heat_kernel(2 * t, 0, 0, 0)).epsilon(1e-9));

  // Dilations and symmetry.
  const double t = 0.7;
  CHECK(h1_heat_kernel(t, 0.4, -0.3, 0.8) ==
        doctest::Approx(h1_heat_kernel(1, 0.4 / std::sqrt(t), -0.3 / std::sqrt(t), 0.8 / t) / (t * t)).epsilon(1e-8));
  CHECK(h1_heat_kernel(1, 0.4, -0.3, 0.8) == doctest::Approx(h1_heat_kernel(1, -0.4, 0.3, -0.8)).epsilon(1e-10));
  CHECK(h1_heat_kernel(1, 0.5, 0, 0.3) == doctest::Approx(h1_heat_kernel(1, 0.3, 0.4, 0.3)).epsilon(1e-10));

  // On the centre ∫ μ/sinh μ e^{ibμ} dμ = (π²/2) sech²(πb/2), so the log is exact.
  for (double u : {0.5, 50.0, 400.0}) {
    const double x = pi * u / 2;
    const double exact = std::log(1 / 16.0) + std::log(4.0) - 2 * x - 2 * std::log1p(std::exp(-2 * x));
    CHECK(h1_log_heat_kernel(1, 0, 0, u) == doctest::Approx(exact).epsilon(1e-9));
  }
  // Off-axis references from a 60-digit real-line integration.
  CHECK(h1_log_heat_kernel(1, 0.4, -0.3, 0.8) == doctest::Approx(-4.05478863459202).epsilon(1e-10));
  CHECK(h1_log_heat_kernel(1, 3, 0, 10) == doctest::Approx(-22.3119123944041).epsilon(1e-10));
  CHECK(h1_log_heat_kernel(1, 5, 0, 50) == doctest::Approx(-108.618423089668).epsilon(1e-10));
  CHECK(std::isfinite(h1_log_heat_kernel(1, 40, 0, 0)));
  CHECK(h1_log_heat_kernel(1, 40, 0, 0) == doctest::Approx(-1600.0 / 4).epsilon(0.02));

  CHECK_THROWS_AS(h1_heat_kernel(0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("H1 heat kernel has unit mass")
{
  using boost::math::quadrature::gauss_kronrod;
  const double t = 0.5;
  // The kernel is below e^{−40} outside r < 9, |u| < 7.
  // Radial in (x, y): mass = 2 ∫₀^∞ du ∫₀^∞ 2πr k_t(r, 0, u) dr.
  auto inner = [&](double u) {
    auto f = [&](double r) { return 2 * pi * r * h1_heat_kernel(t, r, 0, u); };
    return gauss_kronrod<double, 15>::integrate(f, 0.0, 9.0, 6, 1e-9);
  };
  double mass = 2 * gauss_kronrod<double, 15>::integrate(inner, 0.0, 7.0, 6, 1e-8);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("multiplier bounds")
{
  const Rational q4 = 4, m2 = 2;
  const double a = lp_lq_exponent(1.5, 3, q4, m2);
  CHECK(a == doctest::Approx(2 * (1 / 1.5 - 1.0 / 3)));
  for (double s : {0.5, 1.0, 3.0}) {
    const double exact = std::pow(a / (std::exp(1.0) * s), a);
    CHECK(multiplier_norm_bound(MultiplierSpec::exponential(s), 1.5, 3, q4, m2) == doctest::Approx(exact).epsilon(1e-6));
    CHECK(multiplier_norm_bound(MultiplierSpec::exponential(2 * s), 1.5, 3, q4, m2) ==
          doctest::Approx(std::pow(2.0, -a) * multiplier_norm_bound(MultiplierSpec::exponential(s), 1.5, 3, q4, m2))
              .epsilon(1e-6));
  }
  // (1+λ)^{−k} λ^a peaks at λ = a/(k−a).
  const double k = 3, lam = a / (k - a);
  CHECK(multiplier_sup(MultiplierSpec::inverse_power(k), a) ==
        doctest::Approx(std::pow(1 + lam, -k) * std::pow(lam, a)).epsilon(1e-6));
  // p = q: the bound is φ(0⁺).
  CHECK(multiplier_norm_bound(MultiplierSpec::exponential(1), 2, 2, q4, m2) == 1);

  // Tabulated exponential reproduces the closed form.
  std::vector<double> ls, vs;
  for (int i = 0; i <= 4000; ++i) {
    ls.push_back(i * 0.01);
    vs.push_back(std::exp(-ls.back()));
  }
  CHECK(multiplier_sup(MultiplierSpec::tabulated(ls, vs), 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
  CHECK_THROWS_AS(MultiplierSpec::tabulated({0, 1}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(lp_lq_exponent(3, 4, q4, m2), std::invalid_argument);
  CHECK_THROWS_AS(lp_lq_exponent(1.5, 1.8, q4, m2), std::invalid_argument);

  CHECK(heat_lp_lq_bound(2, 1.5, 3, q4, m2) == doctest::Approx(std::pow(2.0, -a)));
}

TEST_CASE("torus embedding witnesses")
{
  auto parseval = torus_embedding_witness(1, 2, 2, 0, 40, 16, 7);
  CHECK(parseval.max_ratio <= 1 + 1e-12);
  CHECK(parseval.max_ratio > 1 - 1e-9);

  auto a = torus_embedding_witness(1, 2, 4, 0, 20, 32, 42);
  auto b = torus_embedding_witness(1, 2, 4, 0, 20, 32, 42);
  CHECK(a.ratios == b.ratios);
  auto c = torus_embedding_witness(1, 2, 4, 0, 20, 32, 43);
  CHECK(c.ratios != a.ratios);

  // Without smoothing the q-norm of a Dirichlet-like peak grows with the cutoff.
  auto lowk = torus_embedding_witness(1, 2, 4, 0, 40, 8, 1);
  auto highk = torus_embedding_witness(1, 2, 4, 0, 40, 256, 1);
  CHECK(highk.max_ratio > 1.5 * lowk.max_ratio);

  // Two-dimensional run exercises the multi-axis transform.
  auto two = torus_embedding_witness(2, 2, 2, 0, 8, 6, 3);
  CHECK(two.max_ratio <= 1 + 1e-12);
  CHECK_THROWS_AS(torus_embedding_witness(1, 2, 1, 0, 4, 4, 0), std::invalid_argument);
}
