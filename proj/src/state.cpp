#include "fockcert/state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "fockcert/errors.hpp"

namespace fockcert {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw DomainError("density matrix must be square and non-empty");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw DomainError("density matrix is not Hermitian");
  }
  const double tr = entries_.trace().real();
  if (tr < -kTraceTol || tr > 1.0 + kTraceTol) {
    throw DomainError("density matrix trace " + std::to_string(tr) + " outside [0, 1]");
  }
  const Eigen::MatrixXcd herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw DomainError("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::padded(int dim) const {
  if (dim < this->dim()) throw IndexError("cannot pad to a smaller dimension");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m.topLeftCorner(this->dim(), this->dim()) = entries_;
  return DensityMatrix(std::move(m));
}

CoherentParams CoherentParams::make(double mu, double phi) {
  if (!std::isfinite(mu) || !std::isfinite(phi)) throw DomainError("coherent parameters must be finite");
  if (mu < 0.0) throw DomainError("mean photon number must be non-negative");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double p = std::fmod(phi, two_pi);
  if (p < 0.0) p += two_pi;
  if (p >= two_pi) p = 0.0;
  return {mu, p};
}

ExpectationVector::ExpectationVector(ObservableSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw DomainError("expected " + std::to_string(space_.size()) + " values, got " +
                      std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v)) throw DomainError("non-finite value for " + space_[i].name());
    if (space_[i].is_projector()) {
      if (v < -kRangeTol || v > 1.0 + kRangeTol) {
        throw DomainError(space_[i].name() + " = " + std::to_string(v) + " outside [0, 1]");
      }
    } else if (std::abs(v) > 1.0 + kRangeTol) {
      throw DomainError("|" + space_[i].name() + "| = " + std::to_string(std::abs(v)) + " exceeds 1");
    }
  }
}

Eigen::VectorXd ExpectationVector::as_eigen() const {
  return Eigen::Map<const Eigen::VectorXd>(values_.data(), static_cast<Eigen::Index>(values_.size()));
}

double poisson_prob(int j, double mu) {
  if (j < 0) throw DomainError("Fock index must be non-negative");
  if (!(mu >= 0.0)) throw DomainError("mean photon number must be non-negative");
  if (mu == 0.0) return j == 0 ? 1.0 : 0.0;
  return std::exp(j * std::log(mu) - mu - std::lgamma(j + 1.0));
}

namespace {

// sqrt(P_j P_k) for a coherent state of mean photon number mu.
double amplitude_product(int j, int k, double mu) {
  if (mu == 0.0) return (j == 0 && k == 0) ? 1.0 : 0.0;
  const double log_val = 0.5 * (j + k) * std::log(mu) - mu -
                         0.5 * (std::lgamma(j + 1.0) + std::lgamma(k + 1.0));
  return std::exp(log_val);
}

}  // namespace

double coherent_expectation(const ObservableId& obs, const CoherentParams& p) {
  if (!(p.mu >= 0.0)) throw DomainError("mean photon number must be non-negative");
  if (obs.is_projector()) return poisson_prob(obs.j(), p.mu);
  // rho_jk = sqrt(P_j P_k) e^{-i (k - j) phi}.
  const double s = amplitude_product(obs.j(), obs.k(), p.mu);
  const cplx rho_jk = std::polar(s, -obs.order() * p.phi);
  return (obs.trace_weight() * rho_jk).real();
}

std::vector<double> coherent_expectations(const ObservableSpace& space, const CoherentParams& p) {
  std::vector<double> out;
  out.reserve(space.size());
  for (const auto& o : space) out.push_back(coherent_expectation(o, p));
  return out;
}

cplx trace_product(const Eigen::MatrixXcd& m, const ObservableId& obs) {
  if (m.rows() <= obs.max_index()) {
    throw IndexError("matrix dimension " + std::to_string(m.rows()) + " too small for " + obs.name());
  }
  const int j = obs.j();
  const int k = obs.k();
  if (obs.is_projector()) return m(j, j);
  const cplx w = obs.trace_weight();
  // Tr(O m) = O_kj m_jk + O_jk m_kj.
  return 0.5 * w * m(j, k) + 0.5 * std::conj(w) * m(k, j);
}

double expectation(const DensityMatrix& rho, const ObservableId& obs) {
  const cplx t = trace_product(rho.entries(), obs);
  if (std::abs(t.imag()) > 1e-10) {
    throw DomainError("expectation of " + obs.name() + " has imaginary part; matrix not Hermitian");
  }
  return t.real();
}

ExpectationVector expectations(const DensityMatrix& rho, const ObservableSpace& space) {
  std::vector<double> v;
  v.reserve(space.size());
  for (const auto& o : space) v.push_back(expectation(rho, o));
  return ExpectationVector(space, std::move(v));
}

DensityMatrix make_superposition(std::span<const std::pair<int, cplx>> coeffs, int dim) {
  if (dim <= 0) throw IndexError("dimension must be positive");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  for (const auto& [index, amp] : coeffs) {
    if (index < 0 || index >= dim) {
      throw IndexError("Fock index " + std::to_string(index) + " outside dimension " + std::to_string(dim));
    }
    psi(index) += amp;
  }
  const double norm2 = psi.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw NormalizationError("superposition norm^2 = " + std::to_string(norm2) + ", expected 1");
  }
  Eigen::MatrixXcd rho = psi * psi.adjoint();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix make_superposition(std::initializer_list<std::pair<int, cplx>> coeffs, int dim) {
  return make_superposition(std::span<const std::pair<int, cplx>>(coeffs.begin(), coeffs.size()), dim);
}

DensityMatrix coherent_state(const CoherentParams& p, int dim) {
  if (dim <= 0) throw IndexError("dimension must be positive");
  Eigen::VectorXcd psi(dim);
  for (int n = 0; n < dim; ++n) {
    psi(n) = std::polar(std::sqrt(poisson_prob(n, p.mu)), n * p.phi);
  }
  Eigen::MatrixXcd rho = psi * psi.adjoint();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

}  // namespace fockcert
