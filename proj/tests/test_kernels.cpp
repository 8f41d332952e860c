#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fockcert/errors.hpp"
#include "fockcert/kernels.hpp"
#include "fockcert/support.hpp"

using namespace fockcert;
namespace k = fockcert::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels") {
  std::vector<double> x{1.0, 2.0, 3.0};
  std::vector<double> y{1.0, 1.0, 1.0};
  k::scalar::axpy(2.0, x, y);
  CHECK(y == std::vector<double>{3.0, 5.0, 7.0});
  std::vector<double> re{3.0, 0.0}, im{4.0, -2.0}, acc{1.0, 1.0};
  k::scalar::add_modulus(re, im, acc);
  CHECK(acc == std::vector<double>{6.0, 3.0});
  const auto m = k::scalar::argmax(std::vector<double>{1.0, 5.0, 2.0, 5.0});
  CHECK(m.value == 5.0);
  CHECK(m.index == 1);
}

#if defined(FOCKCERT_HAVE_AVX2_KERNELS)
TEST_CASE("avx2 kernels match the scalar reference") {
  if (!k::backend_available(k::Backend::Avx2)) {
    MESSAGE("AVX2 not available on this CPU");
    return;
  }
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n < 70; ++n) {
    const auto x = random_vec(rng, n);
    const auto im = random_vec(rng, n);
    auto y1 = random_vec(rng, n);
    auto y2 = y1;
    k::scalar::axpy(0.37, x, y1);
    k::avx2::axpy(0.37, x, y2);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

    auto z1 = y1;
    auto z2 = y1;
    k::scalar::add_modulus(x, im, z1);
    k::avx2::add_modulus(x, im, z2);
    for (std::size_t i = 0; i < n; ++i) CHECK(z1[i] == doctest::Approx(z2[i]).epsilon(1e-15));

    const auto a1 = k::scalar::argmax(x);
    const auto a2 = k::avx2::argmax(x);
    CHECK(a1.value == a2.value);
    CHECK(a1.index == a2.index);
  }
}

TEST_CASE("avx2 argmax reports the first of tied maxima") {
  if (!k::backend_available(k::Backend::Avx2)) return;
  for (std::size_t n = 1; n < 40; ++n) {
    for (std::size_t first = 0; first < n; ++first) {
      std::vector<double> v(n, -1.0);
      v[first] = 2.0;
      for (std::size_t j = first + 1; j < n; j += 3) v[j] = 2.0;
      const auto a = k::avx2::argmax(v);
      CHECK(a.index == first);
      CHECK(a.value == 2.0);
    }
  }
}

TEST_CASE("support values do not depend on the kernel backend") {
  if (!k::backend_available(k::Backend::Avx2)) return;
  const auto space = parse_space("P0,P2,X02");
  const support::ClassicalSupport hc(space);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  const auto before = k::active_backend();
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd n(3);
    n << g(rng), g(rng), g(rng);
    k::set_backend(k::Backend::Scalar);
    const double hs = hc.evaluate(n).value;
    const double cs = hc.coarse(n);
    k::set_backend(k::Backend::Avx2);
    const double ha = hc.evaluate(n).value;
    const double ca = hc.coarse(n);
    CHECK(hs == doctest::Approx(ha).epsilon(1e-12));
    CHECK(cs == doctest::Approx(ca).epsilon(1e-12));
  }
  k::set_backend(before);
}
#endif

TEST_CASE("backend selection") {
  CHECK(k::backend_available(k::Backend::Scalar));
  const auto before = k::active_backend();
  k::set_backend(k::Backend::Scalar);
  CHECK(k::active_backend() == k::Backend::Scalar);
  CHECK(std::string(k::backend_name(k::Backend::Scalar)) == "scalar");
  if (!k::backend_available(k::Backend::Avx2)) CHECK_THROWS_AS(k::set_backend(k::Backend::Avx2), ConfigError);
  k::set_backend(before);
}
