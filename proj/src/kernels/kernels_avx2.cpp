// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include <immintrin.h>

#include <cmath>
#include <limits>

#include "fockcert/kernels.hpp"

namespace fockcert::kernels::avx2 {

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = y.size();
  const double* xp = x.data();
  double* yp = y.data();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(yp + i);
    __m256d y1 = _mm256_loadu_pd(yp + i + 4);
    y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(xp + i), y0);
    y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(xp + i + 4), y1);
    _mm256_storeu_pd(yp + i, y0);
    _mm256_storeu_pd(yp + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(xp + i), _mm256_loadu_pd(yp + i));
    _mm256_storeu_pd(yp + i, y0);
  }
  for (; i < n; ++i) yp[i] = std::fma(a, xp[i], yp[i]);
}

void add_modulus(std::span<const double> re, std::span<const double> im, std::span<double> y) {
  const std::size_t n = y.size();
  const double* rp = re.data();
  const double* ip = im.data();
  double* yp = y.data();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(rp + i);
    const __m256d m = _mm256_loadu_pd(ip + i);
    const __m256d sq = _mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m));
    _mm256_storeu_pd(yp + i, _mm256_add_pd(_mm256_loadu_pd(yp + i), _mm256_sqrt_pd(sq)));
  }
  for (; i < n; ++i) yp[i] += std::sqrt(std::fma(rp[i], rp[i], ip[i] * ip[i]));
}

ArgMax argmax(std::span<const double> x) {
  const std::size_t n = x.size();
  const double* xp = x.data();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  __m256d vmax = _mm256_set1_pd(neg_inf);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vmax = _mm256_max_pd(vmax, _mm256_loadu_pd(xp + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double best = neg_inf;
  for (double v : lanes) best = v > best ? v : best;
  for (std::size_t t = i; t < n; ++t) best = xp[t] > best ? xp[t] : best;

  // First index holding the maximum.
  const __m256d target = _mm256_set1_pd(best);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(xp + k), target, _CMP_EQ_OQ));
    if (mask != 0) return {best, k + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)))};
  }
  for (; k < n; ++k) {
    if (xp[k] == best) return {best, k};
  }
  return {best, 0};
}

}  // namespace fockcert::kernels::avx2
