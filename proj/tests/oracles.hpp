#pragma once

// Reference computations used only by the tests. They deliberately avoid the
// library's own routines: coherent amplitudes by recurrence, positivity by
// eigenvalues, support functions by dense brute-force grids.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fockcert/observable.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Coherent amplitudes <n|alpha> = e^{-|alpha|^2/2} alpha^n / sqrt(n!) by recurrence.
inline Eigen::VectorXcd coherent_vector(double mu, double phi, int dim) {
  const cplx alpha = std::polar(std::sqrt(mu), phi);
  Eigen::VectorXcd v(dim);
  v(0) = std::exp(-mu / 2.0);
  for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

inline Eigen::MatrixXcd coherent_rho(double mu, double phi, int dim) {
  const auto v = coherent_vector(mu, phi, dim);
  return v * v.adjoint();
}

// Observable matrix assembled straight from |j><k| definitions.
inline Eigen::MatrixXcd observable(const fockcert::ObservableId& o, int dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const int j = o.j();
  const int k = o.k();
  const cplx I{0.0, 1.0};
  switch (o.kind()) {
    case fockcert::ObservableKind::Projector:
      m(j, j) = 1.0;
      break;
    case fockcert::ObservableKind::CoherX:
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      break;
    case fockcert::ObservableKind::CoherY:
      // i(|k><j| - |j><k|)
      m(k, j) = I;
      m(j, k) = -I;
      break;
    case fockcert::ObservableKind::CoherR: {
      const double c = std::cos(o.theta());
      const double s = std::sin(o.theta());
      m(j, k) = c - I * s;
      m(k, j) = c + I * s;
      break;
    }
  }
  return m;
}

inline double trace_expect(const Eigen::MatrixXcd& rho, const fockcert::ObservableId& o) {
  return (observable(o, static_cast<int>(rho.rows())) * rho).trace().real();
}

inline double min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Brute-force classical support on a dense linear (mu, phi) grid, with the
// amplitudes written out from lgamma.
inline double classical_support_grid(const fockcert::ObservableSpace& space, const Eigen::VectorXd& n,
                                     double mu_max = 30.0, int mu_steps = 6000, int phi_steps = 360) {
  double best = 0.0;  // mu -> infinity
  for (int a = 0; a <= mu_steps; ++a) {
    const double mu = mu_max * a / mu_steps;
    for (int l = 0; l < phi_steps; ++l) {
      const double phi = 2.0 * std::numbers::pi * l / phi_steps;
      double f = 0.0;
      for (std::size_t i = 0; i < space.size(); ++i) {
        const auto& o = space[i];
        const int j = o.j();
        const int k = o.k();
        auto amp = [&](int q) {
          return mu == 0.0 ? (q == 0 ? 1.0 : 0.0) : std::exp(0.5 * (q * std::log(mu) - mu - std::lgamma(q + 1.0)));
        };
        const cplx cj = amp(j) * std::polar(1.0, j * phi);
        const cplx ck = amp(k) * std::polar(1.0, k * phi);
        const cplx rho_jk = cj * std::conj(ck);
        double e = 0.0;
        switch (o.kind()) {
          case fockcert::ObservableKind::Projector:
            e = std::norm(cj);
            break;
          case fockcert::ObservableKind::CoherX:
            e = 2.0 * rho_jk.real();
            break;
          case fockcert::ObservableKind::CoherY:
            e = -2.0 * rho_jk.imag();
            break;
          case fockcert::ObservableKind::CoherR:
            e = 2.0 * (std::polar(1.0, o.theta()) * rho_jk).real();
            break;
        }
        f += n(static_cast<Eigen::Index>(i)) * e;
      }
      best = std::max(best, f);
    }
  }
  return best;
}

inline Eigen::VectorXd random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = g(rng);
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

}  // namespace oracle
