#include <cmath>
#include <limits>

#include "fockcert/kernels.hpp"

namespace fockcert::kernels::scalar {

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_modulus(std::span<const double> re, std::span<const double> im, std::span<double> y) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) y[i] += std::sqrt(re[i] * re[i] + im[i] * im[i]);
}

ArgMax argmax(std::span<const double> x) {
  ArgMax best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > best.value) best = {x[i], i};
  }
  return best;
}

}  // namespace fockcert::kernels::scalar
