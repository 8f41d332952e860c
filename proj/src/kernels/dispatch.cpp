#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "fockcert/errors.hpp"
#include "fockcert/kernels.hpp"

namespace fockcert::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(FOCKCERT_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  const bool avx2 = cpu_has_avx2();
  if (const char* env = std::getenv("FOCKCERT_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2) return Backend::Avx2;
  }
  return avx2 ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

bool backend_available(Backend b) {
  return b == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw ConfigError(std::string("SIMD backend not available: ") + backend_name(b));
  }
  current().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
#if defined(FOCKCERT_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) return avx2::axpy(a, x, y);
#endif
  scalar::axpy(a, x, y);
}

void add_modulus(std::span<const double> re, std::span<const double> im, std::span<double> y) {
#if defined(FOCKCERT_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) return avx2::add_modulus(re, im, y);
#endif
  scalar::add_modulus(re, im, y);
}

ArgMax argmax(std::span<const double> x) {
#if defined(FOCKCERT_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) return avx2::argmax(x);
#endif
  return scalar::argmax(x);
}

}  // namespace fockcert::kernels
