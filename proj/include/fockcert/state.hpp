#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fockcert/observable.hpp"

namespace fockcert {

/// Truncated Fock-basis density matrix. Hermitian, PSD and trace <= 1 within
/// tolerance; a trace below one is the projection of a normalized state onto
/// the first dim levels.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kPsdTol = 1e-9;
  static constexpr double kTraceTol = 1e-9;

  /// Validates the invariants and throws DomainError on violation.
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  cplx operator()(int r, int c) const { return entries_(r, c); }
  double trace() const { return entries_.trace().real(); }

  /// Embeds into a larger truncation by zero padding.
  DensityMatrix padded(int dim) const;

 private:
  Eigen::MatrixXcd entries_;
};

/// Coherent state |alpha> with alpha = sqrt(mu) e^{i phi}.
struct CoherentParams {
  double mu = 0.0;
  double phi = 0.0;

  /// Throws DomainError for mu < 0 or non-finite values; wraps phi to [0, 2pi).
  static CoherentParams make(double mu, double phi);
};

/// Real expectation values aligned with an observable space.
class ExpectationVector {
 public:
  static constexpr double kRangeTol = 1e-9;

  /// Throws DomainError if a projector value leaves [0, 1] or a coherence
  /// value has modulus above 1 (each within kRangeTol).
  ExpectationVector(ObservableSpace space, std::vector<double> values);

  const ObservableSpace& space() const { return space_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  Eigen::VectorXd as_eigen() const;

 private:
  ObservableSpace space_;
  std::vector<double> values_;
};

/// e^{-mu} mu^j / j!, evaluated in log space.
double poisson_prob(int j, double mu);

/// Tr(O |alpha><alpha|) in closed form.
double coherent_expectation(const ObservableId& obs, const CoherentParams& p);

/// Vector of coherent expectations over a space.
std::vector<double> coherent_expectations(const ObservableSpace& space, const CoherentParams& p);

/// Tr(O rho). Throws IndexError if rho is too small for obs and DomainError
/// if the trace has an imaginary part above 1e-10.
double expectation(const DensityMatrix& rho, const ObservableId& obs);

ExpectationVector expectations(const DensityMatrix& rho, const ObservableSpace& space);

/// Expectation of obs on an arbitrary (possibly non-Hermitian) matrix; the
/// real part of Tr(O m). Used for linear maps of matrix units.
cplx trace_product(const Eigen::MatrixXcd& m, const ObservableId& obs);

/// Pure state sum_i c_i |n_i>. Amplitudes must have unit norm within 1e-12.
DensityMatrix make_superposition(std::span<const std::pair<int, cplx>> coeffs, int dim);
DensityMatrix make_superposition(std::initializer_list<std::pair<int, cplx>> coeffs, int dim);

/// Projection of |alpha><alpha| onto the first dim Fock levels.
DensityMatrix coherent_state(const CoherentParams& p, int dim);

}  // namespace fockcert
