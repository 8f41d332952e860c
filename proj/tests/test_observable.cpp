#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "fockcert/errors.hpp"
#include "fockcert/observable.hpp"
#include "oracles.hpp"

using namespace fockcert;

TEST_CASE("projector matrix is a diagonal unit") {
  const auto m = observable_matrix(ObservableId::projector(0), 2);
  CHECK(m(0, 0) == cplx(1.0, 0.0));
  CHECK(m(1, 1) == cplx(0.0, 0.0));
  CHECK(std::abs(m(0, 1)) == 0.0);
}

TEST_CASE("X01 has eigenvalues plus and minus one") {
  const auto m = observable_matrix(ObservableId::coher_x(0, 1), 2);
  CHECK(m(0, 1) == cplx(1.0, 0.0));
  CHECK(m(1, 0) == cplx(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(1.0));
}

TEST_CASE("R is cos X plus sin Y elementwise") {
  for (double theta : {0.0, 0.3, 1.7, 3.0, 5.9}) {
    const auto r = observable_matrix(ObservableId::coher_r(0, 1, theta), 2);
    const auto x = observable_matrix(ObservableId::coher_x(0, 1), 2);
    const auto y = observable_matrix(ObservableId::coher_y(0, 1), 2);
    CHECK((r - (std::cos(theta) * x + std::sin(theta) * y)).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("observable matrices match the ket-bra definitions and have the right spectra") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> idx(0, 6);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 200; ++trial) {
    int j = idx(rng);
    int k = idx(rng);
    if (j == k) continue;
    if (j > k) std::swap(j, k);
    const int dim = k + 2;
    for (const auto& o : {ObservableId::coher_x(j, k), ObservableId::coher_y(j, k),
                          ObservableId::coher_r(j, k, ang(rng)), ObservableId::projector(j)}) {
      const auto m = observable_matrix(o, dim);
      CHECK((m - oracle::observable(o, dim)).cwiseAbs().maxCoeff() < 1e-15);
      CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
      const auto ev = es.eigenvalues();
      if (o.is_projector()) {
        CHECK(ev(0) == doctest::Approx(0.0));
        CHECK(ev(dim - 1) == doctest::Approx(1.0));
      } else {
        CHECK(ev(0) == doctest::Approx(-1.0));
        CHECK(ev(dim - 1) == doctest::Approx(1.0));
        CHECK(std::abs(ev(1)) < 1e-12);
      }
    }
  }
}

TEST_CASE("trace weight reproduces the matrix trace") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) a(r, c) = cplx(g(rng), g(rng));
  }
  const Eigen::MatrixXcd rho = a * a.adjoint();
  for (const auto& o : {ObservableId::coher_x(0, 2), ObservableId::coher_y(1, 3), ObservableId::coher_r(0, 3, 2.2),
                        ObservableId::coher_r(2, 1, 0.4)}) {
    const cplx w = o.trace_weight();
    const double via_weight = (w * rho(o.j(), o.k())).real();
    CHECK(via_weight == doctest::Approx(oracle::trace_expect(rho, o)).epsilon(1e-12));
  }
}

TEST_CASE("matrix too small for the indices is an index error") {
  CHECK_THROWS_AS(observable_matrix(ObservableId::coher_x(0, 2), 2), IndexError);
  CHECK_THROWS_AS(observable_matrix(ObservableId::projector(3), 3), IndexError);
}

TEST_CASE("coherence constructors enforce distinct non-negative indices") {
  CHECK_THROWS_AS(ObservableId::coher_x(1, 1), DomainError);
  CHECK_THROWS_AS(ObservableId::coher_x(-1, 1), IndexError);
  CHECK_THROWS_AS(ObservableId::coher_y(2, 1), DomainError);
  CHECK_THROWS_AS(ObservableId::projector(-2), IndexError);
  CHECK_THROWS_AS(ObservableId::coher_r(0, 1, std::nan("")), DomainError);
}

TEST_CASE("canonical storage orders indices") {
  CHECK(ObservableId::coher_x(2, 0) == ObservableId::coher_x(0, 2));
  const auto r = ObservableId::coher_r(1, 0, 0.5);
  CHECK(r.j() == 0);
  CHECK(r.k() == 1);
  CHECK(r.theta() == doctest::Approx(2.0 * std::numbers::pi - 0.5));
  const auto m1 = observable_matrix(ObservableId::coher_r(1, 0, 0.5), 2);
  // R_10(theta) = cos X + sin Y_10 = cos X - sin Y_01
  const auto x = observable_matrix(ObservableId::coher_x(0, 1), 2);
  const auto y = observable_matrix(ObservableId::coher_y(0, 1), 2);
  CHECK((m1 - (std::cos(0.5) * x - std::sin(0.5) * y)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(ObservableId::coher_r(0, 1, 7.0).theta() == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
}

TEST_CASE("observable tokens parse") {
  CHECK(parse_observable("P0") == ObservableId::projector(0));
  CHECK(parse_observable("P12") == ObservableId::projector(12));
  CHECK(parse_observable("X01") == ObservableId::coher_x(0, 1));
  CHECK(parse_observable("x10") == ObservableId::coher_x(0, 1));
  CHECK(parse_observable("Y12") == ObservableId::coher_y(1, 2));
  CHECK(parse_observable("X[10][12]") == ObservableId::coher_x(10, 12));
  CHECK(parse_observable("X1[12]") == ObservableId::coher_x(1, 12));
  CHECK(parse_observable(" R01@1.5 ") == ObservableId::coher_r(0, 1, 1.5));
  CHECK(parse_observable("X[10][12]").name() == "X[10][12]");
  CHECK(parse_observable("R01@1.5").name().rfind("R01@", 0) == 0);
}

TEST_CASE("malformed observable tokens are parse errors") {
  for (const char* bad : {"", "Q1", "X0", "X00", "X012", "R01", "R01@", "R01@x", "Y10", "P", "X[1", "P-1", "X0a"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_observable(bad), ParseError);
  }
}

TEST_CASE("spaces are ordered, non-empty and duplicate free") {
  const auto s = parse_space("P0,X01,Y12");
  CHECK(s.size() == 3);
  CHECK(s.max_index() == 2);
  CHECK(s.default_dim() == 4);
  CHECK(s.index_of(ObservableId::coher_y(1, 2)) == 2);
  CHECK(s.index_of(ObservableId::projector(5)) == -1);
  CHECK(s.name() == "P0,X01,Y12");
  CHECK(parse_space(s.name()) == s);
  CHECK_THROWS_AS(parse_space("P0,P0"), ParseError);
  CHECK_THROWS_AS(parse_space("X01,X10"), ParseError);
  CHECK_THROWS_AS(parse_space("P0,"), ParseError);
  CHECK_THROWS_AS(ObservableSpace({}), DomainError);
}
