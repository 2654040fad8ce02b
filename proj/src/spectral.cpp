#include "wsub/spectral.hpp"

#include "wsub/catalog.hpp"
#include "wsub/forms.hpp"
#include "wsub/weighted.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fftw3.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <random>

namespace wsub {

namespace {

constexpr double pi = std::numbers::pi;

std::string lower(std::string s)
{
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Number of integers k with k² < r2.
std::int64_t count_below(double r2)
{
  if (r2 <= 0) return 0;
  auto k = static_cast<std::int64_t>(std::sqrt(r2));
  while (k > 0 && static_cast<double>(k) * static_cast<double>(k) >= r2) --k;
  while (static_cast<double>(k + 1) * static_cast<double>(k + 1) < r2) ++k;
  return 2 * k + 1;
}

// Lattice points ξ ∈ ℤⁿ with |ξ|² < r2, looping over all but the last coordinate.
double lattice_count(std::size_t n, double r2)
{
  if (r2 <= 0) return 0;
  if (n == 1) return static_cast<double>(count_below(r2));
  auto kmax = static_cast<std::int64_t>(std::sqrt(r2)) + 1;
  double total = 0;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    double rest = r2 - static_cast<double>(k) * static_cast<double>(k);
    if (rest > 0) total += lattice_count(n - 1, rest);
  }
  return total;
}

double su2_count(double s)
{
  double total = 0;
  for (std::int64_t l = 1; static_cast<double>(l) < s; ++l) {
    const std::int64_t top = l * (l + 1);
    // |m| ranges over m_min..l where m_min is the least |m| with top − m² < s.
    const double threshold = static_cast<double>(top) - s;
    std::int64_t m_min = threshold < 0 ? 0 : static_cast<std::int64_t>(std::sqrt(threshold));
    while (m_min <= l && static_cast<double>(top - m_min * m_min) >= s) ++m_min;
    while (m_min > 0 && static_cast<double>(top - (m_min - 1) * (m_min - 1)) < s) --m_min;
    if (m_min > l) continue;
    const std::int64_t ms = m_min == 0 ? 2 * l + 1 : 2 * (l - m_min + 1);
    total += static_cast<double>((2 * l + 1) * ms);
  }
  return total;
}

// ∫ e^{−2tλ} d(κλ²) = κ/(2t²).
double heisenberg_trace(double t)
{
  return heisenberg_counting_constant() / (2 * t * t);
}

double torus_trace(std::size_t n, double t)
{
  // θ(t) = Σ_k e^{−8π²tk²}; the trace is θⁿ − 1 without the zero mode.
  double theta = 1;
  for (std::int64_t k = 1;; ++k) {
    double term = 2 * std::exp(-8 * pi * pi * t * static_cast<double>(k * k));
    theta += term;
    if (term < 1e-18 * theta) break;
  }
  return std::pow(theta, static_cast<double>(n)) - 1;
}

double su2_trace(double t)
{
  // Level l holds eigenvalues l + (l² − m²), so it contributes at most
  // (2l+1)² e^{−2tl}; stop once that bound times the geometric tail factor
  // is negligible.
  const double q = std::exp(-2 * t);
  double total = 0;
  for (std::int64_t l = 1;; ++l) {
    const double level_scale = std::exp(-2 * t * static_cast<double>(l));
    double inner = 0;
    for (std::int64_t j = 0; j <= l; ++j) { // j = l − |m|
      const double gap = static_cast<double>(j) * static_cast<double>(2 * l - j);
      const double term = std::exp(-2 * t * gap);
      inner += (j == l) ? term : 2 * term;
      if (term < 1e-20) break;
    }
    const double contribution = static_cast<double>(2 * l + 1) * level_scale * inner;
    total += contribution;
    const double next = static_cast<double>((2 * l + 3) * (2 * l + 3));
    const double ratio = next / static_cast<double>((2 * l + 1) * (2 * l + 1)) * q;
    if (ratio < 1) {
      const double bound = next * level_scale * q / (1 - ratio);
      if (bound < 1e-16 * total) break;
    }
  }
  return total;
}

//------------------------------------------------------------------------------
// H₁ heat kernel
//------------------------------------------------------------------------------

using cd = std::complex<double>;

// log F(μ) with F(μ) = μ/sinh μ · exp(−aμ coth μ + ibμ), up to 2πi.
cd log_f(cd mu, double a, double b)
{
  if (std::abs(mu) < 1e-4) {
    cd mu2 = mu * mu;
    return -mu2 / 6.0 - a * (1.0 + mu2 / 3.0) + cd(0, b) * mu;
  }
  // Re μ ≥ 0 on the contour, so e^{−2μ} never overflows.
  cd e = std::exp(-2.0 * mu);
  cd log_sinh = mu - std::log(2.0) + std::log(1.0 - e);
  cd coth = (1.0 + e) / (1.0 - e);
  return std::log(mu) - log_sinh - a * mu * coth + cd(0, b) * mu;
}

// L(θ) = log F(iθ), real for 0 ≤ θ < π.
double saddle_height(double theta, double a, double b)
{
  if (theta < 1e-4) return theta * theta / 6 - a * (1 - theta * theta / 3) - b * theta;
  return std::log(theta / std::sin(theta)) - a * theta / std::tan(theta) - b * theta;
}

double minimise_height(double a, double b)
{
  // L is convex on [0, π): golden section.
  double lo = 0, hi = pi - 1e-9;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = saddle_height(x1, a, b), f2 = saddle_height(x2, a, b);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = saddle_height(x1, a, b);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = saddle_height(x2, a, b);
    }
  }
  return (lo + hi) / 2;
}

} // namespace

//------------------------------------------------------------------------------
// Backends
//------------------------------------------------------------------------------

SpectralBackend::SpectralBackend(Kind kind, std::size_t torus_dim, const std::string& catalog_name)
    : m_kind(kind), m_torus_dim(torus_dim)
{
  catalog::Entry entry = catalog::lookup(catalog_name);
  WeightedBasis gens = WeightedBasis::from_indices(entry.algebra, entry.generators.indices, entry.generators.weights);
  GradedLieAlgebra graded = contract(entry.algebra, reduce(entry.algebra, gens));
  m_q_star = graded.q_star;
  m_order = sublaplacian_form(entry.generators.indices.size()).order();
}

SpectralBackend SpectralBackend::torus(std::size_t n)
{
  if (n == 0) throw std::invalid_argument("torus dimension must be positive");
  return SpectralBackend(Kind::Torus, n, "abelian" + std::to_string(n));
}

SpectralBackend SpectralBackend::heisenberg()
{
  return SpectralBackend(Kind::Heisenberg, 0, "heisenberg1");
}

SpectralBackend SpectralBackend::su2()
{
  return SpectralBackend(Kind::Su2, 0, "su2");
}

SpectralBackend SpectralBackend::parse(const std::string& raw)
{
  std::string name = lower(raw);
  if (name == "heisenberg" || name == "heisenberg1" || name == "h1") return heisenberg();
  if (name == "su2") return su2();
  if (name.rfind("torus", 0) == 0) {
    std::string digits;
    for (char c : name.substr(5))
      if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
      else if (c != '(' && c != ')') throw std::invalid_argument("unknown backend: " + raw);
    if (digits.empty()) throw std::invalid_argument("torus backend needs a dimension: " + raw);
    return torus(std::stoul(digits));
  }
  throw std::invalid_argument("unknown backend: " + raw);
}

std::string SpectralBackend::name() const
{
  switch (m_kind) {
  case Kind::Torus: return "torus" + std::to_string(m_torus_dim);
  case Kind::Heisenberg: return "heisenberg";
  case Kind::Su2: return "su2";
  }
  return {};
}

std::string SpectralBackend::normalization() const
{
  switch (m_kind) {
  case Kind::Torus: return "probability Haar measure on [0,1)^n; eigenvalues |2*pi*xi|^2";
  case Kind::Heisenberg: return "Lebesgue measure dx dy du; X = d/dx - y/2 d/du, Y = d/dy + x/2 d/du";
  case Kind::Su2: return "probability Haar measure; -(X1^2 + X2^2), integer spins";
  }
  return {};
}

double heisenberg_counting_constant()
{
  static const double kappa = [] {
    // Σ_k (2k+1)⁻² summed to K with the Euler–Maclaurin tail 1/(4K) − 1/(8K²).
    const std::int64_t K = 200000;
    double s = 0;
    for (std::int64_t k = K - 1; k >= 0; --k) s += 1.0 / static_cast<double>((2 * k + 1) * (2 * k + 1));
    const double kk = static_cast<double>(K);
    s += 1 / (4 * kk) - 1 / (8 * kk * kk);
    return s / (4 * pi * pi);
  }();
  return kappa;
}

double counting_function(const SpectralBackend& backend, double s)
{
  if (!(s > 0) || !std::isfinite(s)) throw std::invalid_argument("counting_function: s must be positive");
  switch (backend.kind()) {
  case SpectralBackend::Kind::Torus: return lattice_count(backend.torus_dim(), s / (4 * pi * pi)) - 1;
  case SpectralBackend::Kind::Heisenberg: return heisenberg_counting_constant() * s * s;
  case SpectralBackend::Kind::Su2: return su2_count(s);
  }
  return 0;
}

std::vector<Eigenvalue> su2_sublaplacian_spectrum(std::int64_t l_max)
{
  if (l_max < 0) throw std::invalid_argument("l_max must be non-negative");
  std::map<std::int64_t, std::int64_t> mult;
  for (std::int64_t l = 0; l <= l_max; ++l)
    for (std::int64_t m = -l; m <= l; ++m) mult[l * (l + 1) - m * m] += 2 * l + 1;
  std::vector<Eigenvalue> out;
  for (auto [v, k] : mult) out.push_back({v, k});
  return out;
}

double h1_log_heat_kernel(double t, double x, double y, double u)
{
  if (!(t > 0)) throw std::invalid_argument("heat kernel: t must be positive");
  // Substituting λt = μ: k_t = (8π²t²)⁻¹ ∫ F(μ) dμ with a = r²/(4t), b = |u|/t.
  // F(−μ̄) = conj F(μ), so along Im μ = θ the integral is 2∫₀^∞ Re F.
  const double a = (x * x + y * y) / (4 * t);
  const double b = std::abs(u) / t;
  const double theta = minimise_height(a, b);
  const double height = saddle_height(theta, a, b);
  auto integrand = [&](double s) {
    cd g = std::exp(log_f(cd(s, theta), a, b) - height);
    return g.real();
  };
  // Panels start at the width of the saddle peak and grow geometrically, but
  // never beyond half an oscillation period π/b; each is integrated adaptively
  // and the error estimates are summed.
  const double d = 1e-3;
  const double curvature = std::abs(std::log(std::abs(std::exp(log_f(cd(d, theta), a, b) - height))) / (d * d));
  const double max_width = std::min(4.0, pi / (1 + b));
  double width = std::min({0.5, 1 / std::sqrt(1 + curvature), max_width});
  double value = 0, err = 0, l1 = 0;
  auto panel = [&](auto&& f, double lo, double hi) {
    double e = 0, m = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 1, 1e-10, &e, &m);
    err += e;
    l1 += m;
    return v;
  };

  // For strongly oscillating integrands the part Re μ ≥ 1 is moved up by Δ:
  // F is analytic off the imaginary axis, the vertical leg at Re μ = 1 does
  // not oscillate, and the raised half-line is damped by e^{−bΔ}.
  const bool lift = b >= 40;
  const double stop = lift ? 1.0 : 2000.0;
  int quiet = 0;
  for (double lo = 0; lo < stop && quiet < 3; lo += width, width = std::min(max_width, 1.25 * width)) {
    const double hi = std::min(stop, lo + width);
    value += panel(integrand, lo, hi);
    const double edge = std::abs(std::exp(log_f(cd(hi, theta), a, b) - height));
    quiet = (lo > 2 && edge < 1e-16 * std::abs(value)) ? quiet + 1 : 0;
  }
  if (lift) {
    const double delta = std::min(1.2, 45 / b);
    auto vertical = [&](double y) { return (cd(0, 1) * std::exp(log_f(cd(1, y), a, b) - height)).real(); };
    for (double lo = theta; lo < theta + delta; lo += 1 / b) value += panel(vertical, lo, std::min(theta + delta, lo + 1 / b));
    // On the raised line with Re μ ≥ 1 and Im μ ≤ π + 1.2, Re(μ coth μ) > 0 and
    // ∫₁^∞ |μ/sinh μ| ds ≤ 5.5, which bounds the omitted half-line.
    err += 5.5 * std::exp(-height - b * (theta + delta));
    quiet = 3;
  }
  if (!(value > 0) || quiet < 3 || err > 1e-8 * value + 1e-12 * l1)
    throw QuadratureError("heat kernel quadrature did not converge (t=" + std::to_string(t) + ")");
  return std::log(value) + height - std::log(4 * pi * pi * t * t);
}

double h1_heat_kernel(double t, double x, double y, double u)
{
  return std::exp(h1_log_heat_kernel(t, x, y, u));
}

double heat_trace_l2(const SpectralBackend& backend, double t)
{
  if (!(t > 0)) throw std::invalid_argument("heat_trace_l2: t must be positive");
  switch (backend.kind()) {
  case SpectralBackend::Kind::Torus: return torus_trace(backend.torus_dim(), t);
  case SpectralBackend::Kind::Heisenberg: return heisenberg_trace(t);
  case SpectralBackend::Kind::Su2: return su2_trace(t);
  }
  return 0;
}

//------------------------------------------------------------------------------
// Growth
//------------------------------------------------------------------------------

PowerFit fit_power_exponent(const std::vector<std::pair<double, double>>& samples)
{
  if (samples.size() < 2) throw std::invalid_argument("power fit needs at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(samples.size());
  for (auto [s, v] : samples) {
    if (!(s > 0) || !(v > 0)) throw std::invalid_argument("power fit needs positive samples");
    double lx = std::log(s), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den <= 0) throw std::invalid_argument("power fit needs distinct abscissae");
  PowerFit fit;
  fit.exponent = (n * sxy - sx * sy) / den;
  fit.log_intercept = (sy - fit.exponent * sx) / n;
  for (auto [s, v] : samples)
    fit.residual = std::max(fit.residual, std::abs(std::log(v) - fit.log_intercept - fit.exponent * std::log(s)));
  return fit;
}

std::vector<double> log_grid(double from, double to, std::size_t per_decade)
{
  if (!(from > 0) || !(to > from) || per_decade == 0) throw std::invalid_argument("log_grid: need 0 < from < to");
  const double decades = std::log10(to / from);
  const auto steps = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade) - 1e-9));
  std::vector<double> out;
  for (std::size_t i = 0; i <= steps; ++i)
    out.push_back(from * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(steps)));
  out.back() = to;
  return out;
}

GrowthReport verify_growth(const SpectralBackend& backend, const std::vector<double>& s_grid, double tolerance)
{
  if (s_grid.size() < 2) throw std::invalid_argument("verify_growth: grid too small");
  if (!std::is_sorted(s_grid.begin(), s_grid.end()) ||
      std::adjacent_find(s_grid.begin(), s_grid.end()) != s_grid.end())
    throw std::invalid_argument("verify_growth: grid must be strictly increasing");
  if (!(s_grid.front() > 0) || s_grid.back() / s_grid.front() < 100)
    throw std::invalid_argument("verify_growth: grid must be positive and span at least two decades");
  GrowthReport rep;
  rep.backend = backend.name();
  rep.target = backend.growth_exponent();
  rep.tolerance = tolerance;
  for (double s : s_grid) {
    double v = counting_function(backend, s);
    if (!(v > 0)) throw std::invalid_argument("verify_growth: counting function vanishes at s=" + std::to_string(s));
    rep.samples.emplace_back(s, v);
  }
  PowerFit fit = fit_power_exponent(rep.samples);
  rep.fitted_exponent = fit.exponent;
  rep.residual = fit.residual;
  rep.pass = std::abs(fit.exponent - to_double(rep.target)) <= tolerance;
  return rep;
}

//------------------------------------------------------------------------------
// Multipliers
//------------------------------------------------------------------------------

MultiplierSpec::MultiplierSpec(std::string name, std::function<double(double)> eval, double range_end)
    : m_name(std::move(name)), m_eval(std::move(eval)), m_range_end(range_end)
{
}

MultiplierSpec MultiplierSpec::exponential(double s)
{
  if (!(s > 0)) throw std::invalid_argument("exponential multiplier needs s > 0");
  return MultiplierSpec("exp(-" + std::to_string(s) + "*lambda)", [s](double l) { return std::exp(-s * l); },
                        std::numeric_limits<double>::infinity());
}

MultiplierSpec MultiplierSpec::inverse_power(double k)
{
  if (!(k > 0)) throw std::invalid_argument("inverse power multiplier needs k > 0");
  return MultiplierSpec("(1+lambda)^-" + std::to_string(k), [k](double l) { return std::pow(1 + l, -k); },
                        std::numeric_limits<double>::infinity());
}

MultiplierSpec MultiplierSpec::tabulated(std::vector<double> lambdas, std::vector<double> values)
{
  if (lambdas.size() < 2 || lambdas.size() != values.size())
    throw std::invalid_argument("tabulated multiplier needs matching grids of length ≥ 2");
  if (lambdas.front() != 0) throw std::invalid_argument("tabulated multiplier grid must start at 0");
  if (std::abs(values.front() - 1) > 1e-12) throw std::invalid_argument("tabulated multiplier needs φ(0) = 1");
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > lambdas[i - 1])) throw std::invalid_argument("tabulated multiplier grid must increase");
    if (values[i] > values[i - 1] || values[i] < 0)
      throw std::invalid_argument("tabulated multiplier must be non-negative and non-increasing");
  }
  const double end = lambdas.back();
  auto eval = [ls = std::move(lambdas), vs = std::move(values)](double l) {
    if (l <= 0) return vs.front();
    if (l >= ls.back()) return vs.back();
    auto it = std::upper_bound(ls.begin(), ls.end(), l);
    auto i = static_cast<std::size_t>(it - ls.begin());
    double w = (l - ls[i - 1]) / (ls[i] - ls[i - 1]);
    return (1 - w) * vs[i - 1] + w * vs[i];
  };
  return MultiplierSpec("tabulated", eval, end);
}

double lp_lq_exponent(double p, double q, const Rational& q_star, const Rational& order)
{
  if (!(p > 1) || !(p <= 2) || !(q >= 2) || !std::isfinite(q))
    throw std::invalid_argument("exponents must satisfy 1 < p <= 2 <= q < infinity");
  if (sgn(order) <= 0 || sgn(q_star) <= 0) throw std::invalid_argument("Q* and m must be positive");
  return to_double(q_star) / to_double(order) * (1 / p - 1 / q);
}

double multiplier_sup(const MultiplierSpec& phi, double a, double rel_tol)
{
  if (a < 0) throw std::invalid_argument("multiplier exponent must be non-negative");
  const double phi0 = phi(0);
  if (a == 0) return phi0; // φ is non-increasing, so the sup is the limit at 0⁺

  const double lo = -30, hi = std::isfinite(phi.range_end()) ? std::log(phi.range_end()) : 30;
  auto g = [&](double log_l) {
    double l = std::exp(log_l);
    return phi(l) * std::pow(l, a);
  };

  // Coarse scan, also checking that φ does not increase.
  const std::size_t n = 2000;
  double best = -1, best_x = lo, prev_phi = phi0;
  for (std::size_t i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    double v = phi(std::exp(x));
    if (v > prev_phi * (1 + 1e-12) + 1e-300) throw std::invalid_argument("multiplier is not non-increasing");
    prev_phi = v;
    double gv = g(x);
    if (gv > best) {
      best = gv;
      best_x = x;
    }
  }

  // Refine around the maximiser until the sup stabilises.
  double half = (hi - lo) / static_cast<double>(n);
  for (int round = 0; round < 60; ++round) {
    double a0 = std::max(lo, best_x - half), a1 = std::min(hi, best_x + half);
    double new_best = best, new_x = best_x;
    for (int i = 0; i <= 40; ++i) {
      double x = a0 + (a1 - a0) * i / 40.0;
      double gv = g(x);
      if (gv > new_best) {
        new_best = gv;
        new_x = x;
      }
    }
    const double change = (new_best - best) / std::max(new_best, 1e-300);
    best = new_best;
    best_x = new_x;
    half /= 10;
    if (change < rel_tol && half < 1e-6) break;
  }
  return best;
}

double multiplier_norm_bound(const MultiplierSpec& phi, double p, double q, const Rational& q_star,
                             const Rational& order, double rel_tol)
{
  return multiplier_sup(phi, lp_lq_exponent(p, q, q_star, order), rel_tol);
}

double heat_lp_lq_bound(double s, double p, double q, const Rational& q_star, const Rational& order)
{
  if (!(s > 0)) throw std::invalid_argument("heat bound needs s > 0");
  return std::pow(s, -lp_lq_exponent(p, q, q_star, order));
}

//------------------------------------------------------------------------------
// Torus embedding witnesses
//------------------------------------------------------------------------------

namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

// Haar-normalised L^r norm of grid samples.
double grid_norm(const std::vector<cd>& f, double r)
{
  double acc = 0, peak = 0;
  for (const auto& v : f) peak = std::max(peak, std::abs(v));
  if (peak == 0) return 0;
  for (const auto& v : f) acc += std::pow(std::abs(v) / peak, r);
  return peak * std::pow(acc / static_cast<double>(f.size()), 1 / r);
}

} // namespace

EmbeddingWitness torus_embedding_witness(std::size_t n, double p, double q, double gamma, std::size_t trials,
                                         std::size_t cutoff, std::uint64_t seed)
{
  if (n == 0 || n > 3) throw std::invalid_argument("embedding witness: torus dimension must be 1, 2 or 3");
  if (!(p >= 1) || !(q >= p) || !std::isfinite(q)) throw std::invalid_argument("embedding witness: need 1 <= p <= q < inf");
  if (gamma < 0 || trials == 0 || cutoff == 0) throw std::invalid_argument("embedding witness: bad parameters");

  const std::size_t side = 2 * cutoff + 1;
  const std::size_t grid = 4 * side;
  std::size_t modes = 1, points = 1;
  for (std::size_t d = 0; d < n; ++d) {
    modes *= side;
    points *= grid;
  }

  std::unique_ptr<fftw_complex[], FftwFree> buf(fftw_alloc_complex(points));
  std::vector<int> dims(n, static_cast<int>(grid));
  fftw_plan plan = fftw_plan_dft(static_cast<int>(n), dims.data(), buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE);

  // Frequency of mode index m along one axis, and its grid slot.
  auto freq = [&](std::size_t m) { return static_cast<std::int64_t>(m) - static_cast<std::int64_t>(cutoff); };
  auto slot = [&](std::int64_t k) {
    return static_cast<std::size_t>((k % static_cast<std::int64_t>(grid) + static_cast<std::int64_t>(grid)) %
                                    static_cast<std::int64_t>(grid));
  };
  auto decode = [&](std::size_t idx, std::vector<std::int64_t>& xi) {
    for (std::size_t d = n; d-- > 0;) {
      xi[d] = freq(idx % side);
      idx /= side;
    }
  };

  auto synthesize = [&](const std::vector<cd>& coeffs, double power) {
    std::fill(reinterpret_cast<double*>(buf.get()), reinterpret_cast<double*>(buf.get()) + 2 * points, 0.0);
    std::vector<std::int64_t> xi(n);
    for (std::size_t idx = 0; idx < modes; ++idx) {
      if (coeffs[idx] == cd(0)) continue;
      decode(idx, xi);
      double norm2 = 0;
      std::size_t pos = 0;
      for (std::size_t d = 0; d < n; ++d) {
        norm2 += static_cast<double>(xi[d] * xi[d]);
        pos = pos * grid + slot(xi[d]);
      }
      cd c = coeffs[idx] * std::pow(1 + 4 * pi * pi * norm2, power);
      buf[pos][0] = c.real();
      buf[pos][1] = c.imag();
    }
    fftw_execute(plan);
    std::vector<cd> out(points);
    for (std::size_t i = 0; i < points; ++i) out[i] = cd(buf[i][0], buf[i][1]);
    return out;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0, 1);
  EmbeddingWitness out;
  std::vector<std::int64_t> xi(n);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<cd> coeffs(modes);
    switch (trial % 4) {
    case 0: // independent Gaussian coefficients on every mode
      for (auto& c : coeffs) c = cd(normal(rng), normal(rng));
      break;
    case 1: { // peaked: flat spectrum on a random box, coherent at a random point
      const double bw = std::exp(unit(rng) * std::log(static_cast<double>(cutoff) + 1)) - 1;
      std::vector<double> x0(n);
      for (auto& v : x0) v = unit(rng);
      for (std::size_t idx = 0; idx < modes; ++idx) {
        decode(idx, xi);
        bool inside = true;
        double phase = 0;
        for (std::size_t d = 0; d < n; ++d) {
          inside = inside && std::abs(static_cast<double>(xi[d])) <= bw;
          phase -= 2 * pi * static_cast<double>(xi[d]) * x0[d];
        }
        if (inside) coeffs[idx] = std::polar(1 + 0.1 * normal(rng), phase);
      }
      break;
    }
    case 2: { // a single mode
      std::uniform_int_distribution<std::size_t> pick(0, modes - 1);
      coeffs[pick(rng)] = 1;
      break;
    }
    default: { // a few random modes
      std::uniform_int_distribution<std::size_t> pick(0, modes - 1);
      for (int k = 0; k < 4; ++k) coeffs[pick(rng)] = cd(normal(rng), normal(rng));
      break;
    }
    }
    bool any = std::any_of(coeffs.begin(), coeffs.end(), [](cd c) { return c != cd(0); });
    if (!any) coeffs[modes / 2] = 1;

    const double num = grid_norm(synthesize(coeffs, 0.0), q);
    const double den = grid_norm(synthesize(coeffs, gamma), p);
    const double ratio = num / den;
    out.ratios.push_back(ratio);
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.best_trial = trial;
    }
  }
  fftw_destroy_plan(plan);
  return out;
}

} // namespace wsub
