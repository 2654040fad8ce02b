#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wsub/estimates.hpp"
#include "wsub/spectral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

using namespace wsub;

namespace {

// Plain partial sum in long double, far past any reasonable truncation.
long double dyadic_oracle(long double b, long double m, long double q)
{
  long double s = 0;
  for (int j = 1; j <= 60; ++j) s += std::exp(-2 * b * std::pow(2.0L, j / (m - 1)) + (j + 1) * q / m * std::log(2.0L));
  return s;
}

// Sup-bound sum over a fixed number of annuli, no certificate.
double annuli_oracle(double t, double b, double m, double q, double beta)
{
  VolumeModel v{Rational(static_cast<long>(q)), beta};
  auto r = [&](int j) { return std::pow(std::pow(2.0, j) * t, 1 / m); };
  double total = v(r(1));
  for (int j = 1; j < 200; ++j) {
    double w = std::exp(-2 * b * std::pow(2.0, j / (m - 1)));
    if (w == 0) break;
    total += w * (v(r(j + 1)) - v(r(j)));
  }
  return total;
}

} // namespace

TEST_CASE("gaussian_envelope")
{
  GaussianParams p;
  CHECK(gaussian_envelope(1, 1, p) == doctest::Approx(std::exp(-1.0)));
  p.c = 3;
  p.omega = 0.5;
  CHECK(gaussian_envelope(2, 0, p) == doctest::Approx(3 * std::pow(2.0, -2.0) * std::exp(1.0)));
  double prev = gaussian_envelope(0.5, 0, p);
  for (double r = 0.1; r < 5; r += 0.1) {
    double cur = gaussian_envelope(0.5, r, p);
    CHECK(cur < prev);
    prev = cur;
  }
  p.m = 4;
  p.q_star = 6;
  CHECK(log_gaussian_envelope(2, 1.5, p) ==
        doctest::Approx(std::log(3.0) - 1.5 * std::log(2.0) + 1 - 1 * std::pow(std::pow(1.5, 4) / 2, 1 / 3.0)));
  CHECK_THROWS_AS(gaussian_envelope(0, 1, p), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_envelope(1, -1, p), std::invalid_argument);
  p.b = 0;
  CHECK_THROWS_AS(gaussian_envelope(1, 1, p), std::invalid_argument);
}

TEST_CASE("volume model")
{
  VolumeModel v{4, 1};
  CHECK(v(1) == doctest::Approx(1));
  CHECK(v(1 - 1e-12) == doctest::Approx(v(1 + 1e-12)));
  CHECK(v(0.5) == doctest::Approx(1.0 / 16));
  CHECK(v(3) == doctest::Approx(std::exp(2.0)));
  double prev = 0;
  for (double r = 0.05; r < 6; r += 0.05) {
    CHECK(v(r) >= prev);
    prev = v(r);
  }
}

TEST_CASE("dyadic series values")
{
  CHECK(std::abs(dyadic_series_bound(1, 2, 4) - 0.3146) < 1e-4);
  CHECK(std::abs(dyadic_series_bound(1, 2, 3) - 0.1541) < 1e-4);
  // First terms by hand: 16e⁻⁴ + 64e⁻⁸ + 256e⁻¹⁶.
  CHECK(std::abs(dyadic_series(1, 2, 4).value() - (16 * std::exp(-4.0) + 64 * std::exp(-8.0) + 256 * std::exp(-16.0))) <
        1e-8);

  for (double b : {0.1, 0.5, 1.0, 3.0})
    for (int m : {2, 3, 4})
      for (int q : {1, 3, 4, 7}) {
        SeriesBound s = dyadic_series(b, m, q);
        const double oracle = static_cast<double>(dyadic_oracle(b, m, q));
        INFO("b=" << b << " m=" << m << " q=" << q);
        CHECK(s.tail < 1e-12);
        CHECK(s.partial <= oracle * (1 + 1e-14));
        CHECK(s.value() >= oracle * (1 - 1e-14)); // the tail really bounds the remainder
        CHECK(std::abs(s.value() - oracle) <= 1e-12 + 1e-13 * oracle);
      }
  CHECK_THROWS_AS(dyadic_series(0, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(dyadic_series(1, Rational(3, 2), 4), std::invalid_argument);
}

TEST_CASE("dyadic series monotonicity")
{
  for (int q : {2, 4, 6}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double b = 0.2; b < 4; b += 0.2) {
      double cur = dyadic_series_bound(b, 2, q);
      CHECK(cur < prev);
      prev = cur;
    }
  }
  for (double b : {0.5, 1.0, 2.0}) {
    double prev = 0;
    for (int q = 1; q <= 10; ++q) {
      double cur = dyadic_series_bound(b, 3, q);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("annuli integral at small t")
{
  GaussianParams p; // b = 1, m = 2, Q* = 4
  VolumeModel v{4, 1};
  AnnuliReport rep = annuli_integral_check({1e-2, 1e-3, 1e-4}, p, v);
  CHECK(rep.limit == doctest::Approx(4 + 0.75 * dyadic_series_bound(1, 2, 4)));
  CHECK(rep.monotone_converging);
  CHECK(rep.converging);
  CHECK(rep.all_finite);
  for (const auto& row : rep.rows) {
    CHECK(row.integral == doctest::Approx(annuli_oracle(row.t, 1, 2, 4, 1)).epsilon(1e-12));
    CHECK(row.near_limit);
    CHECK(row.chain_holds);
    CHECK(row.certified_tail < 1e-12 * row.integral);
  }
}

TEST_CASE("annuli bound dominates the Gaussian integral")
{
  // ∫ exp(−2b r²/t) dV(r) computed as a Stieltjes integral of the model volume.
  using boost::math::quadrature::gauss_kronrod;
  VolumeModel v{4, 1};
  for (double t : {0.01, 0.3, 2.0}) {
    auto dens = [&](double r) {
      double dv = r <= 1 ? 4 * r * r * r : std::exp(r - 1);
      return std::exp(-2 * r * r / t) * dv;
    };
    double exact = gauss_kronrod<double, 31>::integrate(dens, 0.0, 1.0, 10, 1e-12) +
                   gauss_kronrod<double, 31>::integrate(dens, 1.0, 60.0, 10, 1e-12);
    AnnuliReport rep = annuli_integral_check({t}, GaussianParams{}, v);
    CHECK(rep.rows[0].integral >= exact);
  }
}

TEST_CASE("annuli integral at large t and large beta")
{
  GaussianParams p;
  AnnuliReport rep = annuli_integral_check({10}, p, VolumeModel{4, 1});
  CHECK(rep.all_finite);
  CHECK(std::isfinite(rep.rows[0].integral));
  CHECK(rep.rows[0].integral == doctest::Approx(annuli_oracle(10, 1, 2, 4, 1)).epsilon(1e-12));
  CHECK_FALSE(rep.converging); // t = 10 is in the exponential-volume regime

  AnnuliReport steep = annuli_integral_check({1e-4, 1e-2, 1, 10}, p, VolumeModel{4, 5});
  CHECK(steep.all_finite);
  CHECK(steep.rows[3].integral == doctest::Approx(annuli_oracle(10, 1, 2, 4, 5)).epsilon(1e-12));
  CHECK(steep.rows[0].near_limit);
  CHECK(steep.rows[3].ratio > steep.rows[2].ratio);
  for (const auto& row : steep.rows) CHECK(row.chain_holds);

  CHECK_THROWS_AS(annuli_integral_check({0}, p, VolumeModel{4, 1}), std::invalid_argument);
  CHECK_THROWS_AS(annuli_integral_check({1}, p, VolumeModel{3, 1}), std::invalid_argument);
}

TEST_CASE("h1 quasi-norm is homogeneous")
{
  CHECK(h1_quasi_norm(3, 4, 0) == doctest::Approx(5));
  CHECK(h1_quasi_norm(0, 0, 9) == doctest::Approx(3));
  for (double s : {0.3, 2.0})
    CHECK(h1_quasi_norm(s * 0.7, s * -0.2, s * s * 1.3) == doctest::Approx(s * h1_quasi_norm(0.7, -0.2, 1.3)));
}

TEST_CASE("envelope fit on a coarse grid")
{
  EnvelopeFit fit = fit_h1_envelope(0.05, 1, 6, 2, 6);
  CHECK(fit.dominated);
  CHECK(fit.fit_margin == doctest::Approx(std::log(1.1)).epsilon(1e-9));
  CHECK(fit.check_margin > 0);
  CHECK(fit.params.b > 0);
  CHECK(fit.params.omega == 0);
  // Spot check a point off both grids.
  CHECK(h1_heat_kernel(0.2, 0.5, 0, 0.4) <= gaussian_envelope(0.2, h1_quasi_norm(0.5, 0, 0.4), fit.params));
}
