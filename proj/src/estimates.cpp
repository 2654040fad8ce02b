#include "wsub/estimates.hpp"

#include "wsub/spectral.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wsub {

void GaussianParams::validate() const
{
  if (!(c > 0) || !(b > 0) || !(omega >= 0)) throw std::invalid_argument("Gaussian parameters need c, b > 0 and ω ≥ 0");
  if (m < 2) throw std::invalid_argument("Gaussian parameters need m ≥ 2");
  if (sgn(q_star) <= 0) throw std::invalid_argument("Gaussian parameters need Q* > 0");
}

double log_gaussian_envelope(double t, double r, const GaussianParams& p)
{
  p.validate();
  if (!(t > 0)) throw std::invalid_argument("gaussian_envelope: t must be positive");
  if (!(r >= 0)) throw std::invalid_argument("gaussian_envelope: r must be non-negative");
  const double m = to_double(p.m);
  const double q = to_double(p.q_star);
  const double decay = r == 0 ? 0 : p.b * std::pow(std::pow(r, m) / t, 1 / (m - 1));
  return std::log(p.c) - q / m * std::log(t) + p.omega * t - decay;
}

double gaussian_envelope(double t, double r, const GaussianParams& p)
{
  return std::exp(log_gaussian_envelope(t, r, p));
}

void VolumeModel::validate() const
{
  if (sgn(q_star) <= 0 || !(beta > 0)) throw std::invalid_argument("volume model needs Q* > 0 and β > 0");
}

double VolumeModel::log_volume(double r) const
{
  if (r <= 0) return -std::numeric_limits<double>::infinity();
  return r <= 1 ? to_double(q_star) * std::log(r) : beta * (r - 1);
}

double VolumeModel::operator()(double r) const
{
  return std::exp(log_volume(r));
}

SeriesBound dyadic_series(double b, const Rational& m_r, const Rational& q_r)
{
  if (!(b > 0) || m_r < 2 || sgn(q_r) <= 0) throw std::invalid_argument("dyadic series needs b > 0, m ≥ 2, Q* > 0");
  const double m = to_double(m_r), q = to_double(q_r);
  const double ln2 = std::numbers::ln2;
  const double k = (m - 1) * q / m;
  SeriesBound out;
  for (std::size_t j = 1; j < 100000; ++j) {
    const double y = std::pow(2.0, static_cast<double>(j) / (m - 1));
    out.partial += std::exp(-2 * b * y + static_cast<double>(j + 1) * q / m * ln2);
    out.terms = j;
    // Terms decrease once y > k/(2b); then Σ_{i>j} ≤ ∫_j^∞.
    if (y > k / (2 * b)) {
      out.tail = std::pow(2.0, q / m) * (m - 1) / ln2 * std::pow(2 * b, -k) * boost::math::tgamma(k, 2 * b * y);
      if (out.tail < 1e-12) return out;
    }
  }
  throw std::runtime_error("dyadic series: tail certificate not reached");
}

double dyadic_series_bound(double b, const Rational& m, const Rational& q_star)
{
  return dyadic_series(b, m, q_star).value();
}

namespace {

AnnuliRow annuli_row(double t, const GaussianParams& p, const VolumeModel& v, double series, double limit)
{
  if (!(t > 0)) throw std::invalid_argument("annuli: t must be positive");
  const double m = to_double(p.m), q = to_double(p.q_star);
  auto radius = [&](double j) { return std::pow(std::pow(2.0, j) * t, 1 / m); };

  AnnuliRow row;
  row.t = t;
  double total = v(radius(1));
  // Tail certificate: |A_i| ≤ V(r_{i+1}) ≤ e^{(Q+β) r_{i+1}}, so term i is at
  // most e^{g(i)} with g(i) = −2b 2^{i/(m−1)} + C 2^{i/m}, C = (Q+β)(2t)^{1/m}.
  // g is concave from the first i with 2^{i(1/(m−1) − 1/m)} > C(m−1)²/(2bm²),
  // and then the remainder is dominated by a geometric series.
  const double c_coef = (q + v.beta) * std::pow(2 * t, 1 / m);
  auto g = [&](double i) { return -2 * p.b * std::pow(2.0, i / (m - 1)) + c_coef * std::pow(2.0, i / m); };
  const double concave_from = c_coef * (m - 1) * (m - 1) / (2 * p.b * m * m);

  row.certified_tail = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < 10000; ++j) {
    const double jd = static_cast<double>(j);
    const double lo = v.log_volume(radius(jd)), hi = v.log_volume(radius(jd + 1));
    const double log_shell = hi + std::log1p(-std::exp(lo - hi));
    total += std::exp(-2 * p.b * std::pow(2.0, jd / (m - 1)) + log_shell);
    row.annuli = j + 1;
    if (std::pow(2.0, (jd + 1) * (1 / (m - 1) - 1 / m)) > concave_from) {
      const double rho = std::exp(g(jd + 2) - g(jd + 1));
      if (rho < 1) {
        const double tail = std::exp(g(jd + 1)) / (1 - rho);
        if (tail < 1e-12 * total) {
          row.certified_tail = tail;
          row.finite = std::isfinite(total);
          break;
        }
      }
    }
  }

  row.integral = total;
  row.ratio = total / std::pow(t, q / m);
  row.model_excess = std::max(0.0, row.ratio / limit - 1);
  row.chain_bound = std::pow(2 * t, q / m) * (1 + series) * (1 + row.model_excess);
  row.chain_holds = row.integral <= row.chain_bound * (1 + 1e-12);
  row.near_limit = std::abs(row.ratio - limit) <= 0.1 * limit;
  return row;
}

} // namespace

AnnuliReport annuli_integral_check(const std::vector<double>& t_grid, const GaussianParams& p, const VolumeModel& v)
{
  p.validate();
  v.validate();
  if (v.q_star != p.q_star) throw std::invalid_argument("annuli: volume model and envelope disagree on Q*");
  if (t_grid.empty()) throw std::invalid_argument("annuli: empty t grid");

  AnnuliReport rep;
  const double qm = to_double(p.q_star / p.m);
  // With pure polynomial volumes I(t)/t^{Q*/m} is constant:
  // 2^{Q*/m} + Σ_j e^{−2b 2^{j/(m−1)}} (2^{(j+1)Q*/m} − 2^{jQ*/m}).
  const double series = dyadic_series_bound(p.b, p.m, p.q_star);
  rep.limit = std::pow(2.0, qm) + (1 - std::pow(2.0, -qm)) * series;

  for (double t : t_grid) rep.rows.push_back(annuli_row(t, p, v, series, rep.limit));

  std::vector<const AnnuliRow*> by_t;
  for (const auto& r : rep.rows) by_t.push_back(&r);
  std::sort(by_t.begin(), by_t.end(), [](auto* a, auto* b) { return a->t > b->t; });
  rep.monotone_converging = true;
  for (std::size_t i = 1; i < by_t.size(); ++i)
    if (std::abs(by_t[i]->ratio - rep.limit) > std::abs(by_t[i - 1]->ratio - rep.limit) + 1e-12 * rep.limit)
      rep.monotone_converging = false;
  rep.all_finite = std::all_of(rep.rows.begin(), rep.rows.end(), [](const AnnuliRow& r) { return r.finite; });
  rep.converging = rep.monotone_converging &&
                   std::all_of(rep.rows.begin(), rep.rows.end(), [](const AnnuliRow& r) { return r.near_limit; });
  return rep;
}

double h1_quasi_norm(double x, double y, double u)
{
  const double r2 = x * x + y * y;
  return std::pow(r2 * r2 + u * u, 0.25);
}

EnvelopeFit fit_h1_envelope(double t_lo, double t_hi, std::size_t t_points, double norm_max, std::size_t norm_points,
                            double safety)
{
  if (!(t_lo > 0) || !(t_hi > t_lo) || t_points < 2 || norm_points < 2 || !(norm_max > 0) || !(safety >= 1))
    throw std::invalid_argument("envelope fit: bad grid");

  struct Point {
    double t, norm, log_k;
  };
  // A point of quasi-norm ρ in direction ψ: |x|² = ρ² cos ψ, u = ρ² sin ψ.
  auto sample = [](double t, double rho, double psi) {
    const double x = rho * std::sqrt(std::cos(psi)), u = rho * rho * std::sin(psi);
    return Point{t, rho, h1_log_heat_kernel(t, x, 0, u)};
  };
  const double pi = std::numbers::pi;
  const double step = std::log(t_hi / t_lo) / static_cast<double>(t_points - 1);
  const double dr = norm_max / static_cast<double>(norm_points - 1);

  std::vector<Point> fit_pts, check_pts;
  for (std::size_t i = 0; i < t_points; ++i) {
    const double t = t_lo * std::exp(step * static_cast<double>(i));
    for (std::size_t j = 0; j < norm_points; ++j)
      for (double psi : {0.0, pi / 4, pi / 2}) fit_pts.push_back(sample(t, dr * static_cast<double>(j), psi));
  }
  for (std::size_t i = 0; i + 1 < t_points; ++i) {
    const double t = t_lo * std::exp(step * (static_cast<double>(i) + 0.5));
    for (std::size_t j = 0; j + 1 < norm_points; ++j)
      for (double psi : {pi / 8, 3 * pi / 8}) check_pts.push_back(sample(t, dr * (static_cast<double>(j) + 0.5), psi));
  }

  // Decay rate relative to the value at the identity, 1/(16t²).
  double min_rate = std::numeric_limits<double>::infinity();
  for (const auto& pt : fit_pts) {
    const double z = pt.norm * pt.norm / pt.t;
    if (z >= 1) min_rate = std::min(min_rate, (std::log(1 / (16 * pt.t * pt.t)) - pt.log_k) / z);
  }
  if (!(min_rate > 0) || !std::isfinite(min_rate))
    throw std::runtime_error("envelope fit: grid does not probe the Gaussian regime");

  EnvelopeFit fit;
  fit.params.m = 2;
  fit.params.q_star = 4;
  fit.params.omega = 0;
  fit.params.b = min_rate / 2;
  double log_c = -std::numeric_limits<double>::infinity();
  for (const auto& pt : fit_pts)
    log_c = std::max(log_c, pt.log_k + 2 * std::log(pt.t) + fit.params.b * pt.norm * pt.norm / pt.t);
  fit.params.c = std::exp(log_c) * safety;

  auto margin = [&](const std::vector<Point>& pts, bool record) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pt : pts) {
      const double gap = log_gaussian_envelope(pt.t, pt.norm, fit.params) - pt.log_k;
      if (gap < best) {
        best = gap;
        if (record) {
          fit.worst_t = pt.t;
          fit.worst_norm = pt.norm;
        }
      }
    }
    return best;
  };
  fit.fit_margin = margin(fit_pts, false);
  fit.check_margin = margin(check_pts, true);
  if (fit.fit_margin < fit.check_margin) margin(fit_pts, true);
  fit.points = fit_pts.size() + check_pts.size();
  fit.dominated = fit.fit_margin > 0 && fit.check_margin > 0;
  return fit;
}

} // namespace wsub
