#include "fockcert/channels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include "fockcert/errors.hpp"

namespace fockcert::channels {

namespace {

constexpr double kTraceLossTol = 1e-8;

cplx ipow(cplx z, int n) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

// Radial part of <a|D(alpha)|m> with the e^{-|alpha|^2/2} factor removed:
// <a|D|m> = e^{-mu/2} g_am(mu) e^{i(a-m)phi}, alpha = sqrt(mu) e^{i phi}.
double radial_entry(int a, int m, double mu) {
  const int lo = std::min(a, m);
  const int diff = std::abs(a - m);
  const double norm = std::exp(0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + diff + 1.0)));
  const double power = diff == 0 ? 1.0 : std::pow(mu, 0.5 * diff);
  const double lag = boost::math::laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(diff), mu);
  const double sign = (a < m && diff % 2 == 1) ? -1.0 : 1.0;
  return sign * norm * power * lag;
}

// Radial node tables: g[i](a, m) at mu_i, with combined weights.
struct RadialTable {
  std::vector<double> weights;
  std::vector<Eigen::MatrixXd> g;
};

RadialTable radial_table(const ThermalParams& tp, int trunc, int in_dim) {
  const auto rule = gauss_laguerre(tp.radial_nodes);
  // e^{-mu/nbar}/nbar * e^{-mu} = e^{-mu (1 + 1/nbar)} / nbar; substitute
  // mu = x nbar / (1 + nbar).
  const double scale = tp.nbar / (1.0 + tp.nbar);
  RadialTable t;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double mu = rule.nodes[i] * scale;
    Eigen::MatrixXd g(trunc, in_dim);
    for (int a = 0; a < trunc; ++a) {
      for (int m = 0; m < in_dim; ++m) g(a, m) = radial_entry(a, m, mu);
    }
    t.weights.push_back(rule.weights[i] / (1.0 + tp.nbar));
    t.g.push_back(std::move(g));
  }
  return t;
}

// Trapezoid average of e^{i k phi} over the angular nodes.
struct AngularAverage {
  explicit AngularAverage(int nodes) : n(nodes) {}
  cplx operator()(int k) const {
    cplx s{0.0, 0.0};
    for (int l = 0; l < n; ++l) s += std::polar(1.0, k * 2.0 * std::numbers::pi * l / n);
    return s / static_cast<double>(n);
  }
  bool vanishes(int k) const { return k % n != 0; }
  int n;
};

}  // namespace

BeamsplitterParams BeamsplitterParams::from_amplitude(cplx t) {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag()) || std::norm(t) > 1.0 + 1e-12) {
    throw DomainError("transmission amplitude must satisfy |t| <= 1");
  }
  return BeamsplitterParams(t);
}

BeamsplitterParams BeamsplitterParams::make(double T, double phi) {
  if (!(T >= 0.0 && T <= 1.0)) throw DomainError("transmissivity T must lie in [0, 1]");
  if (!std::isfinite(phi)) throw DomainError("phase must be finite");
  return BeamsplitterParams(std::polar(std::sqrt(T), phi));
}

void ThermalParams::validate() const {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw DomainError("thermal occupation must be finite and >= 0");
  if (radial_nodes < kMinNodes || angular_nodes < kMinNodes) {
    throw ConfigError("thermal quadrature needs at least " + std::to_string(kMinNodes) + " nodes per axis");
  }
  if (dim < 0) throw ConfigError("thermal truncation must be positive");
}

StateFamily::StateFamily(FamilyTag tag, std::vector<std::pair<int, cplx>> coeffs)
    : tag_(tag), coeffs_(std::move(coeffs)) {}

StateFamily StateFamily::zero_one() {
  const double a = std::numbers::sqrt2 / 2.0;
  return StateFamily(FamilyTag::ZeroOne, {{0, a}, {1, a}});
}

StateFamily StateFamily::zero_two() {
  const double a = std::numbers::sqrt2 / 2.0;
  return StateFamily(FamilyTag::ZeroTwo, {{0, a}, {2, a}});
}

StateFamily StateFamily::one_two() {
  const double a = std::numbers::sqrt2 / 2.0;
  return StateFamily(FamilyTag::OneTwo, {{1, a}, {2, a}});
}

StateFamily StateFamily::custom(std::vector<std::pair<int, cplx>> coeffs) {
  if (coeffs.empty()) throw NormalizationError("custom family needs at least one amplitude");
  StateFamily f(FamilyTag::Custom, std::move(coeffs));
  (void)f.state(f.max_index() + 1);  // validates indices and norm
  return f;
}

int StateFamily::max_index() const {
  int m = 0;
  for (const auto& [n, c] : coeffs_) m = std::max(m, n);
  return m;
}

DensityMatrix StateFamily::state(int dim) const { return make_superposition(coeffs_, dim); }

std::string StateFamily::name() const {
  switch (tag_) {
    case FamilyTag::ZeroOne:
      return "zero-one";
    case FamilyTag::ZeroTwo:
      return "zero-two";
    case FamilyTag::OneTwo:
      return "one-two";
    case FamilyTag::Custom:
      break;
  }
  return "custom";
}

StateFamily parse_family(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "zero-one" || s == "01") return StateFamily::zero_one();
  if (s == "zero-two" || s == "02") return StateFamily::zero_two();
  if (s == "one-two" || s == "12") return StateFamily::one_two();
  throw ParseError("unknown state family '" + std::string(name) + "' (expected zero-one, zero-two or one-two)");
}

DensityMatrix attenuate_closed_form_01(const BeamsplitterParams& p) {
  const double T = p.T();
  const cplx t = p.t();
  Eigen::MatrixXcd m(2, 2);
  m << (2.0 - T) / 2.0, std::conj(t) / 2.0, t / 2.0, T / 2.0;
  return DensityMatrix(m);
}

DensityMatrix attenuate_closed_form_02(const BeamsplitterParams& p) {
  const double T = p.T();
  const double R = p.R();
  const cplx t2 = p.t() * p.t();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 0.5 * (1.0 + R * R);
  m(1, 1) = T * R;
  m(2, 2) = 0.5 * T * T;
  m(2, 0) = 0.5 * t2;
  m(0, 2) = 0.5 * std::conj(t2);
  return DensityMatrix(m);
}

Eigen::MatrixXcd attenuate_kraus_matrix(const Eigen::MatrixXcd& m, const BeamsplitterParams& p, int dim) {
  const auto in = static_cast<int>(m.rows());
  if (m.cols() != in) throw IndexError("attenuation input must be square");
  if (dim < in) throw IndexError("attenuation output dim below input dim");
  const cplx t = p.t();
  const double r = std::sqrt(std::max(0.0, p.R()));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < in; ++k) {
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(dim, in);
    for (int n = k; n < in; ++n) {
      const double c = std::sqrt(boost::math::binomial_coefficient<double>(static_cast<unsigned>(n),
                                                                           static_cast<unsigned>(k)));
      K(n - k, n) = c * ipow(t, n - k) * std::pow(r, k);
    }
    out.noalias() += K * m * K.adjoint();
  }
  return out;
}

DensityMatrix attenuate_kraus(const DensityMatrix& rho, const BeamsplitterParams& p, int dim) {
  Eigen::MatrixXcd out = attenuate_kraus_matrix(rho.entries(), p, dim);
  if (std::abs(out.trace().real() - rho.trace()) > 1e-10) {
    throw TruncationError("attenuation lost trace beyond the truncation");
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

Eigen::MatrixXcd displacement_matrix(cplx alpha, int dim) {
  if (dim < 2) throw ConfigError("displacement matrix needs dim >= 2");
  const double mu = std::norm(alpha);
  const double phi = std::arg(alpha);
  const double damp = std::exp(-0.5 * mu);
  Eigen::MatrixXcd d(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int m = 0; m < dim; ++m) {
      d(a, m) = damp * radial_entry(a, m, mu) * std::polar(1.0, (a - m) * phi);
    }
  }
  const double defect = 1.0 - d.col(0).squaredNorm();
  if (defect > 1e-6) {
    throw TruncationError("displacement |alpha|^2 = " + std::to_string(mu) + " too large for dim " +
                          std::to_string(dim));
  }
  return d;
}

QuadratureRule gauss_laguerre(int n) {
  if (n < 1) throw ConfigError("quadrature needs at least one node");
  // Golub-Welsch: Jacobi matrix of the Laguerre recurrence.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = 2.0 * i + 1.0;
    if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = i + 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  QuadratureRule rule;
  const auto un = static_cast<unsigned>(n);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    // Newton polish on L_n, then weights from the stable closed form
    // w = x / ((n + 1)^2 L_{n+1}(x)^2).
    for (int it = 0; it < 3; ++it) {
      const double ln = boost::math::laguerre(un, x);
      const double dln = n * (ln - boost::math::laguerre(un - 1, x)) / x;
      x -= ln / dln;
    }
    const double lnp1 = boost::math::laguerre(un + 1, x);
    rule.nodes.push_back(x);
    rule.weights.push_back(x / ((n + 1.0) * (n + 1.0) * lnp1 * lnp1));
  }
  return rule;
}

int thermal_truncation(int in_dim, double nbar) {
  if (nbar <= 0.0) return in_dim;
  const double q = nbar / (1.0 + nbar);
  return in_dim + static_cast<int>(std::ceil(std::log(1e-11) / std::log(q))) + 2;
}

DensityMatrix thermalize_quadrature(const DensityMatrix& rho, const ThermalParams& tp) {
  tp.validate();
  if (tp.nbar == 0.0) return rho;
  const int in = rho.dim();
  const int trunc = tp.dim > 0 ? tp.dim : thermal_truncation(in, tp.nbar);
  if (trunc < in) throw ConfigError("thermal truncation below the input dimension");
  const auto table = radial_table(tp, trunc, in);
  const AngularAverage avg(tp.angular_nodes);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(trunc, trunc);
  for (int m = 0; m < in; ++m) {
    for (int n = 0; n < in; ++n) {
      const cplx r = rho(m, n);
      if (r == cplx{0.0, 0.0}) continue;
      for (int a = 0; a < trunc; ++a) {
        for (int b = 0; b < trunc; ++b) {
          const int k = (a - m) - (b - n);
          if (avg.vanishes(k)) continue;
          double radial = 0.0;
          for (std::size_t i = 0; i < table.g.size(); ++i) radial += table.weights[i] * table.g[i](a, m) * table.g[i](b, n);
          out(a, b) += r * avg(k) * radial;
        }
      }
    }
  }
  const double lost = rho.trace() - out.trace().real();
  if (lost > kTraceLossTol) {
    throw TruncationError("thermal channel lost " + std::to_string(lost) + " of the trace at dim " +
                          std::to_string(trunc));
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

ThermalChannel::ThermalChannel(const ThermalParams& tp, int in_dim, int out_dim) : in_dim_(in_dim), out_dim_(out_dim) {
  tp.validate();
  if (in_dim < 1 || out_dim < 1) throw ConfigError("thermal channel dimensions must be positive");
  trunc_ = tp.dim > 0 ? tp.dim : thermal_truncation(in_dim, tp.nbar);
  trunc_ = std::max({trunc_, in_dim, out_dim});
  images_.assign(static_cast<std::size_t>(in_dim) * in_dim, Eigen::MatrixXcd::Zero(out_dim, out_dim));
  traces_.assign(images_.size(), cplx{0.0, 0.0});

  if (tp.nbar == 0.0) {
    for (int m = 0; m < in_dim; ++m) {
      for (int n = 0; n < in_dim; ++n) {
        const auto idx = static_cast<std::size_t>(m * in_dim + n);
        if (m < out_dim && n < out_dim) images_[idx](m, n) = 1.0;
        if (m == n) traces_[idx] = 1.0;
      }
    }
    return;
  }

  const auto table = radial_table(tp, trunc_, in_dim);
  const AngularAverage avg(tp.angular_nodes);
  auto radial = [&](int a, int m, int b, int n) {
    double s = 0.0;
    for (std::size_t i = 0; i < table.g.size(); ++i) s += table.weights[i] * table.g[i](a, m) * table.g[i](b, n);
    return s;
  };
  for (int m = 0; m < in_dim; ++m) {
    for (int n = 0; n < in_dim; ++n) {
      const auto idx = static_cast<std::size_t>(m * in_dim + n);
      for (int a = 0; a < out_dim; ++a) {
        for (int b = 0; b < out_dim; ++b) {
          const int k = (a - m) - (b - n);
          if (!avg.vanishes(k)) images_[idx](a, b) = avg(k) * radial(a, m, b, n);
        }
      }
      if (!avg.vanishes(n - m)) {
        double s = 0.0;
        for (int a = 0; a < trunc_; ++a) s += radial(a, m, a, n);
        traces_[idx] = avg(n - m) * s;
      }
    }
  }
}

Eigen::MatrixXcd ThermalChannel::apply(const Eigen::MatrixXcd& m) const {
  if (m.rows() != in_dim_ || m.cols() != in_dim_) throw IndexError("thermal channel input has the wrong size");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim_, out_dim_);
  cplx tr{0.0, 0.0};
  for (int r = 0; r < in_dim_; ++r) {
    for (int c = 0; c < in_dim_; ++c) {
      const cplx v = m(r, c);
      if (v == cplx{0.0, 0.0}) continue;
      const auto idx = static_cast<std::size_t>(r * in_dim_ + c);
      out += v * images_[idx];
      tr += v * traces_[idx];
    }
  }
  const double lost = m.trace().real() - tr.real();
  if (lost > kTraceLossTol) {
    throw TruncationError("thermal channel lost " + std::to_string(lost) + " of the trace at dim " +
                          std::to_string(trunc_));
  }
  return out;
}

ExpectationVector thermal_closed_form_01(const BeamsplitterParams& p, double nbar, int J) {
  if (J < 0) throw DomainError("level count must be non-negative");
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw DomainError("thermal occupation must be finite and >= 0");
  const double T = p.T();
  const double re_t = p.t().real();
  std::vector<ObservableId> obs;
  std::vector<double> vals;
  for (int j = 0; j <= J; ++j) {
    double pj = 0.0;
    double xj = 0.0;
    if (nbar == 0.0) {
      pj = j == 0 ? (2.0 - T) / 2.0 : (j == 1 ? T / 2.0 : 0.0);
      xj = j == 0 ? re_t : 0.0;
    } else {
      const double g = std::pow(nbar, j) / std::pow(nbar + 1.0, j + 1);
      const double nn = 2.0 * nbar * (nbar + 1.0);
      pj = g * (nn + T * (j - nbar)) / nn;
      xj = g / (nbar + 1.0) * std::sqrt(j + 1.0) * re_t;
    }
    obs.push_back(ObservableId::projector(j));
    vals.push_back(pj);
    obs.push_back(ObservableId::coher_x(j, j + 1));
    vals.push_back(xj);
  }
  return ExpectationVector(ObservableSpace(std::move(obs)), std::move(vals));
}

}  // namespace fockcert::channels
