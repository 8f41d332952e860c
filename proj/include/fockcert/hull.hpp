#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "fockcert/observable.hpp"

namespace fockcert::hull {

/// Absolute tolerance for all boundary comparisons. Points within it of a
/// classical boundary count as classical-compatible.
inline constexpr double kBoundaryTol = 1e-9;

/// Classical maximum of |R_jk(theta)|: the peak of 2 sqrt(P_j P_k) over
/// coherent states, reached at mu = (j + k) / 2.
double classical_coherence_bound(int j, int k);

/// Quantum maximum of |R_jk(theta)|, which is 1 for every pair.
double quantum_coherence_bound(int j, int k);

/// Largest |R_jk| compatible with a given P_j: 2 sqrt(P_j (1 - P_j)).
double quantum_r_bound_given_pj(double pj);

/// Largest |X_01| over classical states with the given P_0: 2 P0 sqrt(-ln P0).
double classical_x01_bound_given_p0(double p0);

/// Largest |X_02| over classical states with the given P_0: sqrt2 P0 ln(1/P0).
double classical_x02_bound_given_p0(double p0);

/// Largest P_1 over classical states with the given P_0: P0 ln(1/P0).
double classical_p1_bound_given_p0(double p0);

/// Whether (P_i, P_j, X_ij, Y_ij) embeds in a quantum state: the 2x2 block
/// is PSD and P_i + P_j <= 1.
bool psd_2x2(double pi, double pj, double x, double y);

/// Whether the 3x3 Hermitian block with diagonal (p0, p1, p2) and upper
/// off-diagonal entries c01, c02, c12 (c_ij = rho_ij) is PSD with trace <= 1.
/// Decided by all principal minors of the assembled matrix.
bool psd_3x3(double p0, double p1, double p2, std::complex<double> c01, std::complex<double> c02,
             std::complex<double> c12);

/// Three-coherence inequality with t_ij = c_ij / sqrt(P_i P_j):
/// |t01|^2 + |t02|^2 + |t12|^2 <= 1 + 2 Re(t01 t12 conj(t02)).
/// Only meaningful for strictly positive probabilities; kept as a cross-check.
bool three_coherence_inequality(double p0, double p1, double p2, std::complex<double> c01,
                                std::complex<double> c02, std::complex<double> c12);

struct Point2 {
  double x;
  double y;
};

/// Convex hull of a planar point set (Andrew's monotone chain). Returns the
/// hull counter-clockwise starting from the lowest-x (then lowest-y) point;
/// collinear points are dropped.
std::vector<Point2> convex_hull_2d(std::vector<Point2> points);

/// Classical bounds P_bound^m(P_pivot) <= P_bound <= P_bound^M(P_pivot),
/// tabulated from the convex hull of the sampled coherent curve (P_pivot,
/// P_bound)(mu) together with the mu -> infinity limit point at the origin.
class NumericEnvelope {
 public:
  static constexpr int kMinGrid = 64;

  /// Throws DomainError if pivot == bound, ConfigError if grid_size < 64.
  NumericEnvelope(int pivot, int bound, int grid_size);

  int pivot() const { return pivot_; }
  int bound() const { return bound_; }
  double pivot_min() const { return upper_.front().x; }
  double pivot_max() const { return upper_.back().x; }

  /// Maximum of P_bound over classical states with P_pivot = p, or nullopt
  /// when no classical state has that P_pivot.
  std::optional<double> upper(double p) const;
  std::optional<double> lower(double p) const;

  /// Classical bound on |X_{pivot,bound}| given P_pivot: 2 sqrt(p P^M(p)).
  std::optional<double> coherence_bound(double p) const;

  const std::vector<Point2>& upper_chain() const { return upper_; }
  const std::vector<Point2>& lower_chain() const { return lower_; }

 private:
  int pivot_;
  int bound_;
  std::vector<Point2> upper_;  // increasing x
  std::vector<Point2> lower_;  // increasing x
};

/// Geometric grid of mean photon numbers: 0, then n points from 1e-4 to
/// mu_max. Shared by all sampled coherent curves.
std::vector<double> mu_grid(int n, double mu_max = 50.0);

}  // namespace fockcert::hull
