#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fockcert/errors.hpp"
#include "fockcert/state.hpp"
#include "oracles.hpp"

using namespace fockcert;

TEST_CASE("poisson probabilities") {
  CHECK(poisson_prob(0, 0.0) == 1.0);
  CHECK(poisson_prob(3, 0.0) == 0.0);
  CHECK(poisson_prob(1, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(poisson_prob(2, 2.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
  const double big = poisson_prob(200, 200.0);
  CHECK(std::isfinite(big));
  CHECK(big == doctest::Approx(0.028187).epsilon(1e-4));
  CHECK_THROWS_AS(poisson_prob(-1, 1.0), DomainError);
  CHECK_THROWS_AS(poisson_prob(1, -0.1), DomainError);
}

TEST_CASE("coherent expectations at the vacuum") {
  const auto vac = CoherentParams::make(0.0, 1.0);
  CHECK(coherent_expectation(ObservableId::projector(0), vac) == 1.0);
  CHECK(coherent_expectation(ObservableId::coher_x(0, 1), vac) == 0.0);
  CHECK(coherent_expectation(ObservableId::coher_y(0, 2), vac) == 0.0);
  CHECK(coherent_expectation(ObservableId::coher_r(1, 2, 0.3), vac) == 0.0);
}

TEST_CASE("X01 on a coherent state") {
  CHECK(coherent_expectation(ObservableId::coher_x(0, 1), CoherentParams::make(1.0, 0.0)) ==
        doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(coherent_expectation(ObservableId::coher_x(0, 1), CoherentParams::make(0.5, 0.0)) ==
        doctest::Approx(std::sqrt(2.0) * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("coherent expectations agree with truncated coherent states") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mu_d(0.0, 4.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  const int dim = 30;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double mu = mu_d(rng);
    const double phi = ang(rng);
    const auto rho = oracle::coherent_rho(mu, phi, dim);
    const auto p = CoherentParams::make(mu, phi);
    for (int j = 0; j < 5; ++j) {
      worst = std::max(worst, std::abs(coherent_expectation(ObservableId::projector(j), p) -
                                       oracle::trace_expect(rho, ObservableId::projector(j))));
      for (int k = j + 1; k < 6; ++k) {
        for (const auto& o : {ObservableId::coher_x(j, k), ObservableId::coher_y(j, k),
                              ObservableId::coher_r(j, k, ang(rng))}) {
          worst = std::max(worst, std::abs(coherent_expectation(o, p) - oracle::trace_expect(rho, o)));
        }
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("library expectation agrees with the oracle trace") {
  const auto p = CoherentParams::make(1.3, 0.7);
  const auto rho = coherent_state(p, 30);
  for (const auto& o : {ObservableId::projector(2), ObservableId::coher_x(0, 3), ObservableId::coher_y(1, 2),
                        ObservableId::coher_r(0, 2, 4.0)}) {
    CHECK(expectation(rho, o) == doctest::Approx(coherent_expectation(o, p)).epsilon(1e-10));
  }
}

TEST_CASE("coherences of coherent states lie on the circle of radius 2 sqrt(P_j P_k)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mu_d(0.0, 10.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = CoherentParams::make(mu_d(rng), ang(rng));
    const int j = trial % 4;
    const int k = j + 1 + trial % 3;
    const double x = coherent_expectation(ObservableId::coher_x(j, k), p);
    const double y = coherent_expectation(ObservableId::coher_y(j, k), p);
    const double pj = poisson_prob(j, p.mu);
    const double pk = poisson_prob(k, p.mu);
    CHECK(std::abs(x * x + y * y - 4.0 * pj * pk) < 1e-12);
  }
}

TEST_CASE("coherent curve in (P1, P2) satisfies its implicit relation") {
  for (double mu = 0.05; mu < 8.0; mu += 0.05) {
    const double p1 = poisson_prob(1, mu);
    const double p2 = poisson_prob(2, mu);
    const double r = 2.0 * p2 / (p1 * p1) * std::exp(-2.0 * p2 / p1);
    CHECK(std::abs(r - 1.0) < 1e-10);
  }
}

TEST_CASE("expectation is linear in the state") {
  const auto a = coherent_state(CoherentParams::make(0.8, 0.2), 12);
  const auto b = make_superposition({{0, std::sqrt(0.5)}, {2, cplx(0.0, std::sqrt(0.5))}}, 12);
  for (double lam : {0.0, 0.25, 0.6, 1.0}) {
    const DensityMatrix mix(lam * a.entries() + (1.0 - lam) * b.entries());
    for (const auto& o : {ObservableId::projector(0), ObservableId::coher_x(0, 2), ObservableId::coher_y(0, 2),
                          ObservableId::coher_r(1, 2, 1.0)}) {
      const double lhs = expectation(mix, o);
      const double rhs = lam * expectation(a, o) + (1.0 - lam) * expectation(b, o);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("balanced superpositions") {
  const double a = std::sqrt(0.5);
  const auto r01 = make_superposition({{0, a}, {1, a}}, 3);
  CHECK(r01.trace() == doctest::Approx(1.0));
  CHECK(expectation(r01, ObservableId::projector(0)) == doctest::Approx(0.5));
  CHECK(expectation(r01, ObservableId::projector(1)) == doctest::Approx(0.5));
  CHECK(expectation(r01, ObservableId::coher_x(0, 1)) == doctest::Approx(1.0));

  const auto r02 = make_superposition({{0, a}, {2, a}}, 3);
  CHECK(expectation(r02, ObservableId::projector(2)) == doctest::Approx(0.5));
  CHECK(expectation(r02, ObservableId::coher_x(0, 2)) == doctest::Approx(1.0));
  CHECK(expectation(r02, ObservableId::coher_x(0, 1)) == doctest::Approx(0.0));

  const auto r12 = make_superposition({{1, a}, {2, a}}, 3);
  CHECK(expectation(r12, ObservableId::coher_x(1, 2)) == doctest::Approx(1.0));
}

TEST_CASE("superposition input validation") {
  CHECK_THROWS_AS(make_superposition({{0, 1.0}, {1, 0.1}}, 2), NormalizationError);
  CHECK_THROWS_AS(make_superposition({{0, 1.0}}, 0), IndexError);
  CHECK_THROWS_AS(make_superposition({{3, 1.0}}, 3), IndexError);
}

TEST_CASE("density matrix invariants") {
  Eigen::MatrixXcd m(2, 2);
  m << 0.5, 0.1, 0.2, 0.5;
  CHECK_THROWS_AS(DensityMatrix{m}, DomainError);  // not Hermitian
  m << 0.5, 0.6, 0.6, 0.5;
  CHECK_THROWS_AS(DensityMatrix{m}, DomainError);  // negative eigenvalue
  m << 0.7, 0.0, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix{m}, DomainError);  // trace above one
  m << 0.3, 0.0, 0.0, 0.5;
  const DensityMatrix sub(m);  // projection of a larger state
  CHECK(sub.trace() == doctest::Approx(0.8));
  const auto padded = sub.padded(4);
  CHECK(padded.dim() == 4);
  CHECK(padded(3, 3) == cplx(0.0, 0.0));
  CHECK_THROWS_AS(sub.padded(1), IndexError);
  CHECK_THROWS_AS(expectation(sub, ObservableId::coher_x(0, 2)), IndexError);
}

TEST_CASE("expectation vectors enforce value ranges") {
  const auto s = parse_space("P0,X01");
  CHECK_NOTHROW(ExpectationVector(s, {0.2, -0.6}));
  CHECK_NOTHROW(ExpectationVector(s, {1.0 + 1e-10, 1.0}));
  CHECK_THROWS_AS(ExpectationVector(s, {1.1, 0.0}), DomainError);
  CHECK_THROWS_AS(ExpectationVector(s, {0.5, 1.01}), DomainError);
  CHECK_THROWS_AS(ExpectationVector(s, {0.5}), DomainError);
}

TEST_CASE("coherent parameters") {
  const auto p = CoherentParams::make(1.0, -0.5);
  CHECK(p.phi == doctest::Approx(2.0 * std::numbers::pi - 0.5));
  CHECK_THROWS_AS(CoherentParams::make(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(CoherentParams::make(std::nan(""), 0.0), DomainError);
}
