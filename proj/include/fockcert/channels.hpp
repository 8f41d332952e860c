#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fockcert/observable.hpp"
#include "fockcert/state.hpp"

namespace fockcert::channels {

/// Beamsplitter with complex transmission amplitude t = sqrt(T) e^{i phi}.
class BeamsplitterParams {
 public:
  /// Throws DomainError unless |t| <= 1.
  static BeamsplitterParams from_amplitude(cplx t);
  /// Throws DomainError unless T in [0, 1].
  static BeamsplitterParams make(double T, double phi = 0.0);

  cplx t() const { return t_; }
  double T() const { return std::norm(t_); }
  double R() const { return 1.0 - T(); }
  double phi() const { return std::arg(t_); }

 private:
  explicit BeamsplitterParams(cplx t) : t_(t) {}
  cplx t_;
};

struct ThermalParams {
  double nbar = 0.0;
  int radial_nodes = 48;
  int angular_nodes = 64;
  /// Fock truncation used inside the channel; 0 picks thermal_truncation().
  int dim = 0;

  static constexpr int kMinNodes = 16;
  /// Throws DomainError for negative nbar, ConfigError for too few nodes.
  void validate() const;
};

enum class FamilyTag { ZeroOne, ZeroTwo, OneTwo, Custom };

/// Input states of the attenuation studies: balanced superpositions of two
/// Fock levels, or any normalized custom superposition.
class StateFamily {
 public:
  static StateFamily zero_one();
  static StateFamily zero_two();
  static StateFamily one_two();
  /// Throws NormalizationError unless the amplitudes have unit norm.
  static StateFamily custom(std::vector<std::pair<int, cplx>> coeffs);

  FamilyTag tag() const { return tag_; }
  const std::vector<std::pair<int, cplx>>& coeffs() const { return coeffs_; }
  int max_index() const;
  /// Pure input state at truncation dim (dim > max_index()).
  DensityMatrix state(int dim) const;
  /// "zero-one", "zero-two", "one-two" or "custom".
  std::string name() const;

 private:
  StateFamily(FamilyTag tag, std::vector<std::pair<int, cplx>> coeffs);
  FamilyTag tag_;
  std::vector<std::pair<int, cplx>> coeffs_;
};

/// Accepts zero-one / zero-two / one-two (also 01, 02, 12). Throws ParseError.
StateFamily parse_family(std::string_view name);

/// Attenuated (|0> + |1>)/sqrt2: 1/2[(2 - T)P0 + T P1 + (t|1><0| + h.c.)].
DensityMatrix attenuate_closed_form_01(const BeamsplitterParams& p);

/// Attenuated (|0> + |2>)/sqrt2:
/// 1/2(1 + R^2)P0 + T R P1 + 1/2 T^2 P2 + 1/2(t^2 |2><0| + h.c.).
DensityMatrix attenuate_closed_form_02(const BeamsplitterParams& p);

/// Amplitude damping sum_k K_k rho K_k^dagger with
/// K_k = sum_n sqrt(C(n, k)) t^{n-k} r^k |n-k><n|, r = sqrt(R).
/// The result is padded to dim (dim >= rho.dim()).
DensityMatrix attenuate_kraus(const DensityMatrix& rho, const BeamsplitterParams& p, int dim);

/// Same map on an arbitrary square matrix (linear, no validation).
Eigen::MatrixXcd attenuate_kraus_matrix(const Eigen::MatrixXcd& m, const BeamsplitterParams& p, int dim);

/// Truncated Fock matrix of D(alpha) from the associated-Laguerre closed
/// form. Throws TruncationError if the vacuum column leaks more than 1e-6
/// of its norm outside the truncation.
Eigen::MatrixXcd displacement_matrix(cplx alpha, int dim);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Laguerre rule for the weight e^{-x} on [0, inf).
QuadratureRule gauss_laguerre(int n);

/// Truncation for the thermal channel on inputs of dimension in_dim such that
/// the thermal tail beyond it is below 1e-11.
int thermal_truncation(int in_dim, double nbar);

/// Thermal noise Phi(rho) = int dmu e^{-mu/nbar}/nbar int dphi/2pi D rho D^dagger
/// with D = D(sqrt(mu) e^{i phi}), by Gauss-Laguerre x trapezoid quadrature.
/// Returns the full truncated output. nbar = 0 returns rho unchanged.
/// Throws TruncationError if more than 1e-8 of the trace leaks out.
DensityMatrix thermalize_quadrature(const DensityMatrix& rho, const ThermalParams& tp);

/// The thermal channel restricted to in_dim inputs and an out_dim output
/// block, tabulated once on the matrix units so that many inputs can be
/// pushed through cheaply.
class ThermalChannel {
 public:
  ThermalChannel(const ThermalParams& tp, int in_dim, int out_dim);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  int truncation() const { return trunc_; }

  /// Top-left out_dim block of Phi(m). Throws TruncationError if the
  /// trace lost beyond the truncation exceeds 1e-8.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& m) const;

 private:
  int in_dim_;
  int out_dim_;
  int trunc_;
  std::vector<Eigen::MatrixXcd> images_;  // Phi(|m><n|) blocks, index m * in_dim + n
  std::vector<cplx> traces_;              // traces of Phi(|m><n|) within the truncation
};

/// Closed forms for the attenuated Zero-One family after thermal
/// noise nbar > 0, over the space P0, X01, P1, X12, ..., P_J, X_{J,J+1}:
///   P_j = nbar^j/(nbar+1)^{j+1} [2nbar(nbar+1) + T(j - nbar)] / (2nbar(nbar+1))
///   X_{j,j+1} = nbar^j/(nbar+1)^{j+2} sqrt(j+1) Re(t)
/// nbar = 0 gives the attenuation-only values.
ExpectationVector thermal_closed_form_01(const BeamsplitterParams& p, double nbar, int J);

}  // namespace fockcert::channels
