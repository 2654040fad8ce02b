#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wsub/catalog.hpp"
#include "wsub/forms.hpp"

#include <random>

using namespace wsub;

namespace {

std::vector<Rational> w(std::initializer_list<int> ws)
{
  return {ws.begin(), ws.end()};
}

ComplexRational re(int v)
{
  return {v, 0};
}

// Lowest eigenvalue of −d²/dξ² + λ²ξ² by a second-order finite-difference
// discretisation on a truncated interval.
double oscillator_ground_state_fd(double lambda)
{
  const int n = 1500;
  const double half = 9.0 / std::sqrt(std::abs(lambda));
  const double h = 2 * half / (n + 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double xi = -half + (i + 1) * h;
    m(i, i) = 2 / (h * h) + lambda * lambda * xi * xi;
    if (i > 0) m(i, i - 1) = m(i - 1, i) = -1 / (h * h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

} // namespace

TEST_CASE("form construction")
{
  Form c(w({1, 1}), {{{0, 0}, re(-1)}, {{1, 1}, re(-1)}, {{0}, re(1)}, {{1}, re(0)}});
  CHECK(c.order() == 2);
  CHECK(c.coefficients().size() == 3); // zero coefficient not stored
  CHECK(c({0}) == re(1));
  CHECK(c({1, 0}).is_zero());
  CHECK_THROWS_AS(Form(w({1}), {{{0}, re(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(Form(w({1}), {{{1}, re(1)}}), std::out_of_range);
}

TEST_CASE("principal_part")
{
  Form c(w({1, 1}), {{{0, 0}, re(-1)}, {{1, 1}, re(-1)}, {{0}, re(1)}});
  Form p = principal_part(c);
  CHECK(p == Form(w({1, 1}), {{{0, 0}, re(-1)}, {{1, 1}, re(-1)}}));
  CHECK(is_homogeneous(p));
  CHECK_FALSE(is_homogeneous(c));
  CHECK(principal_part(p) == p);

  // Weights (1,1,2): X3 and X1X1 both have weighted length 2.
  Form h(w({1, 1, 2}), {{{2}, re(1)}, {{0, 0}, re(1)}, {{1}, re(5)}});
  Form hp = principal_part(h);
  CHECK(hp.coefficients().size() == 2);
  CHECK(hp({2}) == re(1));
  CHECK(hp({0, 0}) == re(1));
  CHECK(hp.order() == 2);
}

TEST_CASE("adjoint")
{
  Form c(w({1, 1}), {{{0, 1}, re(1)}});
  Form a = adjoint(c);
  CHECK(a({1, 0}) == re(1));
  CHECK(a({0, 1}).is_zero());

  Form first(w({1}), {{{0}, re(1)}});
  CHECK(adjoint(first)({0}) == re(-1));

  Form cplx(w({1, 1}), {{{0, 1}, ComplexRational{2, 3}}});
  CHECK(adjoint(cplx)({1, 0}) == ComplexRational{2, -3});

  CHECK(is_symmetric(sublaplacian_form(3)));
}

TEST_CASE("adjoint is an involution on random forms")
{
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> len(1, 4), idx(0, 2), num(-5, 5), den(1, 4), terms(1, 6);
  const auto weights = std::vector<Rational>{1, 1, 2};
  for (int trial = 0; trial < 100; ++trial) {
    Form::Coefficients coeffs;
    int n = terms(rng);
    for (int t = 0; t < n; ++t) {
      MultiIndex alpha(len(rng));
      for (auto& a : alpha) a = idx(rng);
      Rational r(num(rng), den(rng)), i(num(rng), den(rng));
      r.canonicalize();
      i.canonicalize();
      coeffs[alpha] = {r, i};
    }
    coeffs[{0}] = re(1); // never all zero
    Form c(weights, coeffs);
    CHECK(adjoint(adjoint(c)) == c);
    CHECK(adjoint(c).order() == c.order());
  }
}

TEST_CASE("sublaplacian_form")
{
  Form two = sublaplacian_form(2);
  CHECK(two({0, 0}) == re(-1));
  CHECK(two({1, 1}) == re(-1));
  CHECK(two.coefficients().size() == 2);
  CHECK(two.order() == 2);
  Form one = sublaplacian_form(1);
  CHECK(one({0, 0}) == re(-1));
  CHECK_THROWS_AS(sublaplacian_form(0), std::invalid_argument);
}

TEST_CASE("rockland_power_form")
{
  CHECK(rockland_power_form(w({1, 1}), w({1, 1}), 2) == sublaplacian_form(2));

  Form f = rockland_power_form(w({1, 2}), w({1, 1}), 4);
  CHECK(f({0, 0, 0, 0}) == re(1));
  CHECK(f({1, 1}) == re(-1));
  CHECK(f.order() == 4);
  CHECK(is_homogeneous(f));
  CHECK(is_symmetric(f));

  CHECK(rockland_power_form(w({1}), w({3}), 2)({0, 0}) == re(-3));
  CHECK_THROWS_AS(rockland_power_form(w({1, 2}), w({1, 1}), 2), std::invalid_argument);
  CHECK_THROWS_AS(rockland_power_form(w({1}), w({0}), 2), std::invalid_argument);
  CHECK_THROWS_AS(rockland_power_form(w({1}), w({1, 1}), 2), std::invalid_argument);

  for (int m : {4, 8, 12}) {
    Form g = rockland_power_form(w({1, 2}), w({2, 5}), m);
    CHECK(is_homogeneous(g));
    CHECK(is_symmetric(g));
  }
}

TEST_CASE("order_compatibility")
{
  LieAlgebra h2 = catalog::heisenberg(2);
  CHECK(order_compatibility(sublaplacian_form(2), WeightedBasis::from_indices(h2, {0, 1}, w({1, 1}))));
  CHECK_FALSE(order_compatibility(sublaplacian_form(2), WeightedBasis::from_indices(h2, {0, 1}, w({1, 2}))));
  Form twelve = rockland_power_form(w({2, 3}), w({1, 1}), 12);
  CHECK(order_compatibility(twelve, WeightedBasis::from_indices(h2, {0, 1}, w({2, 3}))));
}

TEST_CASE("Schrödinger block of the sub-Laplacian is the harmonic oscillator")
{
  for (double lambda : {-2.0, -0.5, 0.25, 1.0, 3.0}) {
    Eigen::MatrixXcd block = heisenberg_schrodinger_block(sublaplacian_form(2), lambda, 12);
    for (Eigen::Index i = 0; i < block.rows(); ++i)
      for (Eigen::Index j = 0; j < block.cols(); ++j) {
        std::complex<double> expected = (i == j) ? (2.0 * static_cast<double>(i) + 1) * std::abs(lambda) : 0.0;
        CHECK(std::abs(block(i, j) - expected) < 1e-10);
      }
  }
  // Commutation relation [π(X), π(Y)] = π(Z) on the exact block.
  Form comm(w({1, 1, 2}), {{{0, 1}, re(1)}, {{1, 0}, re(-1)}, {{2}, re(-1)}});
  Eigen::MatrixXcd zero = heisenberg_schrodinger_block(comm, 1.7, 10);
  CHECK(zero.norm() < 1e-10);
}

TEST_CASE("Hermite ground state matches a finite-difference oscillator")
{
  for (double lambda : {0.5, 1.0, 2.0}) {
    auto screen = heisenberg_rockland_check(sublaplacian_form(2), 8, {lambda});
    REQUIRE(screen.hermite_min_singular.size() == 1);
    CHECK(screen.hermite_min_singular[0].second == doctest::Approx(oscillator_ground_state_fd(lambda)).epsilon(1e-4));
  }
}

TEST_CASE("heisenberg_rockland_check")
{
  std::vector<double> lambdas{-4, -1, -0.25, 0.25, 1, 4};
  auto sub = heisenberg_rockland_check(sublaplacian_form(2), 16, lambdas);
  CHECK(sub.passes);
  for (auto [lambda, smin] : sub.hermite_min_singular) CHECK(std::abs(smin - std::abs(lambda)) < 1e-10);
  CHECK(sub.character_min == doctest::Approx(1.0));

  Form xx(w({1, 1}), {{{0, 0}, re(-1)}});
  auto fail = heisenberg_rockland_check(xx, 16, lambdas);
  CHECK_FALSE(fail.passes);
  REQUIRE(fail.failing_character);
  CHECK(std::abs(fail.failing_character->first) < 1e-12);
  CHECK(fail.failing_character->second == doctest::Approx(1.0));

  // An explicit zero Z coefficient changes nothing.
  Form padded(w({1, 1, 2}), {{{0, 0}, re(-1)}, {{1, 1}, re(-1)}, {{2}, re(0)}});
  CHECK(heisenberg_rockland_check(padded, 16, lambdas).passes);

  CHECK_THROWS_AS(heisenberg_rockland_check(sublaplacian_form(2), 3, lambdas), std::invalid_argument);
  CHECK_THROWS_AS(heisenberg_rockland_check(sublaplacian_form(2), 8, {}), std::invalid_argument);
}
