#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops of the support-function grid search. Every
// kernel has a portable scalar reference and, on x86-64, an AVX2/FMA variant
// chosen at runtime. Results agree to rounding (FMA contraction), and argmax
// always reports the first index attaining the maximum.

namespace fockcert::kernels {

enum class Backend { Scalar, Avx2 };

struct ArgMax {
  double value;
  std::size_t index;
};

/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

/// y += sqrt(re^2 + im^2)
void add_modulus(std::span<const double> re, std::span<const double> im, std::span<double> y);

/// Largest element and the first index where it occurs. x must be non-empty.
ArgMax argmax(std::span<const double> x);

bool backend_available(Backend b);
Backend active_backend();
/// Overrides the runtime choice. Throws ConfigError if b is unavailable.
void set_backend(Backend b);
const char* backend_name(Backend b);

namespace scalar {
void axpy(double a, std::span<const double> x, std::span<double> y);
void add_modulus(std::span<const double> re, std::span<const double> im, std::span<double> y);
ArgMax argmax(std::span<const double> x);
}  // namespace scalar

#if defined(FOCKCERT_HAVE_AVX2_KERNELS)
namespace avx2 {
void axpy(double a, std::span<const double> x, std::span<double> y);
void add_modulus(std::span<const double> re, std::span<const double> im, std::span<double> y);
ArgMax argmax(std::span<const double> x);
}  // namespace avx2
#endif

}  // namespace fockcert::kernels
