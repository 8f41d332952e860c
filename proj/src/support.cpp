#include "fockcert/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>

#include "fockcert/errors.hpp"
#include "fockcert/hull.hpp"
#include "fockcert/kernels.hpp"
#include "optimize.hpp"

namespace fockcert::support {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Indices of local maxima of a profile, best first, at most `count`.
std::vector<std::size_t> top_local_maxima(const std::vector<double>& profile, int count) {
  std::vector<std::size_t> idx;
  const std::size_t n = profile.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || profile[i] >= profile[i - 1];
    const bool right_ok = i + 1 == n || profile[i] >= profile[i + 1];
    if (left_ok && right_ok) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return profile[a] > profile[b]; });
  if (idx.size() > static_cast<std::size_t>(count)) idx.resize(static_cast<std::size_t>(count));
  return idx;
}

}  // namespace

Direction::Direction(Eigen::VectorXd components) : components_(std::move(components)) {
  if (components_.size() == 0) throw DomainError("direction must have at least one component");
  if (!components_.allFinite()) throw DomainError("direction components must be finite");
  if (components_.cwiseAbs().maxCoeff() == 0.0) throw DomainError("direction must not be zero");
}

Direction::Direction(std::initializer_list<double> components)
    : Direction(Eigen::Map<const Eigen::VectorXd>(components.begin(), static_cast<Eigen::Index>(components.size()))) {}

Direction Direction::normalized() const { return Direction(components_ / components_.norm()); }

ClassicalSupport::ClassicalSupport(ObservableSpace space, ClassicalOptions opts)
    : space_(std::move(space)), opts_(opts) {
  if (opts_.mu_points < 16 || opts_.phi_points < 8 || opts_.refine_candidates < 1 || !(opts_.mu_max > 0.0)) {
    throw ConfigError("classical support grid too coarse");
  }
  int order = 0;
  bool mixed = false;
  for (const auto& o : space_) {
    Term t;
    t.order = o.order();
    t.weight = o.trace_weight();
    t.half_log_norm = 0.5 * (o.j() + o.k());
    t.log_fact = 0.5 * (std::lgamma(o.j() + 1.0) + std::lgamma(o.k() + 1.0));
    terms_.push_back(t);
    if (t.order != 0) {
      if (order != 0 && order != t.order) mixed = true;
      order = t.order;
    }
  }
  coherence_order_ = order;
  analytic_phase_ = !mixed && (opts_.phase_fast_path || order == 0);

  mus_ = hull::mu_grid(opts_.mu_points, opts_.mu_max);
  const std::size_t nmu = mus_.size();
  col_re_.resize(terms_.size());
  col_im_.resize(terms_.size());
  if (analytic_phase_) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      col_re_[i].resize(nmu);
      col_im_[i].resize(nmu);
      for (std::size_t a = 0; a < nmu; ++a) {
        const double s = amplitude(terms_[i], mus_[a]);
        col_re_[i][a] = terms_[i].weight.real() * s;
        col_im_[i][a] = terms_[i].weight.imag() * s;
      }
    }
  } else {
    const auto nphi = static_cast<std::size_t>(opts_.phi_points);
    phis_.resize(nphi);
    for (std::size_t l = 0; l < nphi; ++l) phis_[l] = kTwoPi * static_cast<double>(l) / static_cast<double>(nphi);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      auto& col = col_re_[i];
      col.resize(nmu * nphi);
      for (std::size_t a = 0; a < nmu; ++a) {
        const double s = amplitude(terms_[i], mus_[a]);
        for (std::size_t l = 0; l < nphi; ++l) {
          col[a * nphi + l] = (terms_[i].weight * std::polar(s, -terms_[i].order * phis_[l])).real();
        }
      }
    }
  }
}

double ClassicalSupport::amplitude(const Term& t, double mu) const {
  if (mu == 0.0) return t.half_log_norm == 0.0 ? 1.0 : 0.0;
  return std::exp(t.half_log_norm * std::log(mu) - mu - t.log_fact);
}

double ClassicalSupport::objective(const Eigen::VectorXd& n, double mu, double phi) const {
  double f = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double s = amplitude(terms_[i], mu);
    f += n(static_cast<Eigen::Index>(i)) * (terms_[i].weight * std::polar(s, -terms_[i].order * phi)).real();
  }
  return f;
}

std::pair<double, double> ClassicalSupport::phase_max(const Eigen::VectorXd& n, double mu) const {
  double base = 0.0;
  cplx z{0.0, 0.0};
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double s = amplitude(terms_[i], mu);
    const double ni = n(static_cast<Eigen::Index>(i));
    if (terms_[i].order == 0) {
      base += ni * s;
    } else {
      z += ni * terms_[i].weight * s;
    }
  }
  if (coherence_order_ == 0) return {base, 0.0};
  if (analytic_phase_) {
    // Re(z e^{-i m phi}) peaks at m phi = arg z.
    double phi = std::arg(z) / coherence_order_;
    if (phi < 0.0) phi += kTwoPi / coherence_order_;
    return {base + std::abs(z), phi};
  }
  auto f = [&](double phi) { return objective(n, mu, phi); };
  const std::size_t nphi = phis_.size();
  std::size_t best = 0;
  double best_val = kNegInf;
  for (std::size_t l = 0; l < nphi; ++l) {
    const double v = f(phis_[l]);
    if (v > best_val) {
      best_val = v;
      best = l;
    }
  }
  const double step = kTwoPi / static_cast<double>(nphi);
  const auto r = detail::maximize_brent(f, phis_[best] - step, phis_[best] + step);
  if (r.value > best_val) return {r.value, r.x};
  return {best_val, phis_[best]};
}

void ClassicalSupport::accumulate(const Eigen::VectorXd& n, std::vector<double>& acc, std::vector<double>& re,
                                  std::vector<double>& im) const {
  if (static_cast<std::size_t>(n.size()) != terms_.size()) {
    throw DomainError("direction has " + std::to_string(n.size()) + " components, space has " +
                      std::to_string(terms_.size()));
  }
  const std::size_t len = col_re_.front().size();
  acc.assign(len, 0.0);
  if (!analytic_phase_) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      kernels::axpy(n(static_cast<Eigen::Index>(i)), col_re_[i], acc);
    }
    return;
  }
  bool any_coherence = false;
  re.assign(len, 0.0);
  im.assign(len, 0.0);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double ni = n(static_cast<Eigen::Index>(i));
    if (ni == 0.0) continue;
    if (terms_[i].order == 0) {
      kernels::axpy(ni, col_re_[i], acc);
    } else {
      any_coherence = true;
      kernels::axpy(ni, col_re_[i], re);
      kernels::axpy(ni, col_im_[i], im);
    }
  }
  if (any_coherence) kernels::add_modulus(re, im, acc);
}

double ClassicalSupport::coarse(const Eigen::VectorXd& n) const {
  thread_local std::vector<double> acc, re, im;
  accumulate(n, acc, re, im);
  return std::max(0.0, kernels::argmax(acc).value);
}

SupportResult ClassicalSupport::evaluate(const Eigen::VectorXd& n) const {
  thread_local std::vector<double> acc, re, im;
  accumulate(n, acc, re, im);

  // Per-mu profile (max over the phase grid when the phase is not analytic).
  std::vector<double> profile;
  std::vector<double> profile_phi;
  if (analytic_phase_) {
    profile = acc;
  } else {
    const std::size_t nphi = phis_.size();
    profile.resize(mus_.size());
    profile_phi.resize(mus_.size());
    for (std::size_t a = 0; a < mus_.size(); ++a) {
      const auto row = kernels::argmax(std::span<const double>(acc).subspan(a * nphi, nphi));
      profile[a] = row.value;
      profile_phi[a] = phis_[row.index];
    }
  }

  SupportResult res;
  double best_val = kNegInf;
  double best_mu = 0.0;
  double best_phi = 0.0;
  const auto coarse_best = kernels::argmax(profile);
  best_val = coarse_best.value;
  best_mu = mus_[coarse_best.index];
  best_phi = analytic_phase_ ? phase_max(n, best_mu).second : profile_phi[coarse_best.index];

  if (opts_.refine) {
    const auto candidates = top_local_maxima(profile, opts_.refine_candidates);
    for (std::size_t a : candidates) {
      ++res.restarts_used;
      const double lo = mus_[a == 0 ? 0 : a - 1];
      const double hi = mus_[std::min(a + 1, mus_.size() - 1)];
      if (hi <= lo) continue;
      const auto r = detail::maximize_brent([&](double mu) { return phase_max(n, mu).first; }, lo, hi);
      if (r.value > best_val) {
        best_val = r.value;
        best_mu = r.x;
        best_phi = phase_max(n, r.x).second;
      }
    }
  }

  // A maximizer pinned at the end of the mu range means the grid was too short.
  if (best_val > 0.0 && best_mu >= opts_.mu_max * (1.0 - 1e-9)) res.converged = false;

  if (best_val > 0.0) {
    res.value = best_val;
    res.coherent = CoherentParams::make(best_mu, best_phi);
  } else {
    res.value = 0.0;
    res.coherent = std::nullopt;
  }
  return res;
}

SupportResult support_classical(const ObservableSpace& space, const Direction& n, const ClassicalOptions& opts) {
  if (n.size() != space.size()) throw DomainError("direction and space sizes differ");
  return ClassicalSupport(space, opts).evaluate(n.components());
}

namespace {

Eigen::MatrixXcd assemble_operator(const ObservableSpace& space, const Eigen::VectorXd& n, int dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double ni = n(static_cast<Eigen::Index>(i));
    if (ni != 0.0) m += ni * observable_matrix(space[i], dim);
  }
  return m;
}

void check_quantum_dim(const ObservableSpace& space, int dim) {
  if (dim < space.max_index() + 2) {
    throw ConfigError("quantum support needs dim >= " + std::to_string(space.max_index() + 2) + ", got " +
                      std::to_string(dim));
  }
}

}  // namespace

double quantum_support_value(const ObservableSpace& space, const Eigen::VectorXd& n, int dim) {
  check_quantum_dim(space, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(assemble_operator(space, n, dim), Eigen::EigenvaluesOnly);
  return std::max(0.0, es.eigenvalues()(dim - 1));
}

SupportResult support_quantum(const ObservableSpace& space, const Direction& n, int dim) {
  if (n.size() != space.size()) throw DomainError("direction and space sizes differ");
  check_quantum_dim(space, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(assemble_operator(space, n.components(), dim));
  SupportResult res;
  const double top = es.eigenvalues()(dim - 1);
  res.value = std::max(0.0, top);
  if (top >= 0.0) {
    res.eigenvector = es.eigenvectors().col(dim - 1);
  } else {
    // Any state supported on the unobserved top level reaches zero.
    res.eigenvector = Eigen::VectorXcd::Zero(dim);
    res.eigenvector(dim - 1) = 1.0;
  }
  return res;
}

namespace {

// Unit vector from d-1 spherical angles.
Eigen::VectorXd unit_from_angles(const Eigen::VectorXd& angles) {
  const auto d = angles.size() + 1;
  Eigen::VectorXd n(d);
  double s = 1.0;
  for (Eigen::Index i = 0; i < angles.size(); ++i) {
    n(i) = s * std::cos(angles(i));
    s *= std::sin(angles(i));
  }
  n(d - 1) = s;
  return n;
}

Eigen::VectorXd angles_from_unit(const Eigen::VectorXd& n) {
  const auto d = n.size();
  Eigen::VectorXd angles(d - 1);
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    const double tail = n.tail(d - i - 1).norm();
    angles(i) = std::atan2(tail, n(i));
  }
  // The last angle carries the sign of the final component.
  if (d >= 2 && n(d - 1) < 0.0) angles(d - 2) = kTwoPi - angles(d - 2);
  return angles;
}

struct Scored {
  Eigen::VectorXd point;  // angles or free components
  double margin;
};

void keep_best(std::vector<Scored>& best, Scored cand, int k) {
  best.push_back(std::move(cand));
  std::stable_sort(best.begin(), best.end(), [](const Scored& a, const Scored& b) { return a.margin > b.margin; });
  if (best.size() > static_cast<std::size_t>(k)) best.pop_back();
}

}  // namespace

MarginResult maximize_margin(const SupportFn& h, const Eigen::VectorXd& x, const SearchOptions& opts) {
  const auto d = x.size();
  if (d < 1) throw DomainError("empty data vector");
  if (opts.angle_points < 4 || opts.refine_starts < 1) throw ConfigError("direction search grid too coarse");
  int evals = 0;
  MarginResult best;
  best.margin = kNegInf;

  auto record = [&](const Eigen::VectorXd& unit) {
    const double hv = h(unit, true);
    ++evals;
    const double w = unit.dot(x);
    if (w - hv > best.margin) {
      best.direction = unit;
      best.support = hv;
      best.witness = w;
      best.margin = w - hv;
    }
    return w - hv;
  };

  if (!opts.pinned.empty()) {
    if (opts.pinned.size() != static_cast<std::size_t>(d)) throw DomainError("pinned components size mismatch");
    std::vector<Eigen::Index> free;
    Eigen::VectorXd base = Eigen::VectorXd::Zero(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      if (opts.pinned[static_cast<std::size_t>(i)]) {
        base(i) = *opts.pinned[static_cast<std::size_t>(i)];
      } else {
        free.push_back(i);
      }
    }
    auto build = [&](const Eigen::VectorXd& v) {
      Eigen::VectorXd n = base;
      for (std::size_t f = 0; f < free.size(); ++f) n(free[f]) = v(static_cast<Eigen::Index>(f));
      return n;
    };
    auto margin_of = [&](const Eigen::VectorXd& v, bool fine) {
      const Eigen::VectorXd n = build(v);
      const double norm = n.norm();
      if (norm == 0.0) return kNegInf;
      const Eigen::VectorXd unit = n / norm;
      if (fine) return record(unit);
      ++evals;
      return unit.dot(x) - h(unit, false);
    };
    const auto nf = static_cast<Eigen::Index>(free.size());
    if (nf == 0) {
      margin_of(Eigen::VectorXd(0), true);
      best.evaluations = evals;
      return best;
    }
    const double box = opts.pinned_box;
    std::vector<Scored> starts;
    const int pts = nf == 1 ? 4 * opts.angle_points + 1 : opts.angle_points;
    const double step = 2.0 * box / (pts - 1);
    if (nf <= 2) {
      const int total = nf == 1 ? pts : pts * pts;
      for (int c = 0; c < total; ++c) {
        Eigen::VectorXd v(nf);
        v(0) = -box + step * (c % pts);
        if (nf == 2) v(1) = -box + step * (c / pts);
        keep_best(starts, {v, margin_of(v, false)}, opts.refine_starts);
      }
    } else {
      std::mt19937_64 rng(opts.seed);
      std::uniform_real_distribution<double> u(-box, box);
      for (int c = 0; c < opts.random_directions; ++c) {
        Eigen::VectorXd v(nf);
        for (Eigen::Index f = 0; f < nf; ++f) v(f) = u(rng);
        keep_best(starts, {v, margin_of(v, false)}, opts.refine_starts);
      }
    }
    for (const auto& s : starts) {
      if (nf == 1) {
        detail::maximize_brent([&](double t) { return margin_of(Eigen::VectorXd::Constant(1, t), true); },
                               s.point(0) - step, s.point(0) + step);
      } else {
        detail::nelder_mead([&](const Eigen::VectorXd& v) { return -margin_of(v, true); }, s.point, step);
      }
    }
    best.evaluations = evals;
    return best;
  }

  if (d == 1) {
    record(Eigen::VectorXd::Constant(1, 1.0));
    record(Eigen::VectorXd::Constant(1, -1.0));
    best.evaluations = evals;
    return best;
  }

  auto coarse_margin = [&](const Eigen::VectorXd& unit) {
    ++evals;
    return unit.dot(x) - h(unit, false);
  };
  std::vector<Scored> starts;
  const int a_pts = opts.angle_points;
  double step = kTwoPi / a_pts;
  if (d == 2) {
    for (int l = 0; l < a_pts; ++l) {
      Eigen::VectorXd ang = Eigen::VectorXd::Constant(1, kTwoPi * l / a_pts);
      keep_best(starts, {ang, coarse_margin(unit_from_angles(ang))}, opts.refine_starts);
    }
  } else if (d == 3) {
    step = kPi / a_pts;
    for (int i = 0; i < a_pts; ++i) {
      for (int l = 0; l < a_pts; ++l) {
        Eigen::VectorXd ang(2);
        ang << kPi * (i + 0.5) / a_pts, kTwoPi * l / a_pts;
        keep_best(starts, {ang, coarse_margin(unit_from_angles(ang))}, opts.refine_starts);
      }
    }
    for (double pole : {0.0, kPi}) {
      Eigen::VectorXd ang(2);
      ang << pole, 0.0;
      keep_best(starts, {ang, coarse_margin(unit_from_angles(ang))}, opts.refine_starts);
    }
  } else {
    step = 0.2;
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss;
    auto consider = [&](const Eigen::VectorXd& n) {
      const Eigen::VectorXd unit = n / n.norm();
      keep_best(starts, {angles_from_unit(unit), coarse_margin(unit)}, opts.refine_starts);
    };
    for (Eigen::Index i = 0; i < d; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
        e(i) = sgn;
        consider(e);
      }
    }
    for (int c = 0; c < opts.random_directions; ++c) {
      Eigen::VectorXd n(d);
      for (Eigen::Index i = 0; i < d; ++i) n(i) = gauss(rng);
      if (n.norm() > 0.0) consider(n);
    }
  }

  for (const auto& s : starts) {
    if (d == 2) {
      detail::maximize_brent([&](double t) { return record(unit_from_angles(Eigen::VectorXd::Constant(1, t))); },
                             s.point(0) - step, s.point(0) + step);
    } else {
      record(unit_from_angles(s.point));
      detail::nelder_mead([&](const Eigen::VectorXd& ang) { return -record(unit_from_angles(ang)); }, s.point,
                          step);
    }
  }
  best.evaluations = evals;
  return best;
}

namespace {

// Independent dense re-evaluation of h_C: finer mu grid, finer phase scan,
// exact objective (no precomputed tables).
double verify_support(const ClassicalSupport& hc, const Eigen::VectorXd& n, int factor) {
  ClassicalOptions fine = hc.options();
  fine.mu_points *= factor;
  fine.phi_points *= factor;
  fine.refine_candidates = std::max(fine.refine_candidates, 4);
  if (hc.analytic_phase()) return ClassicalSupport(hc.space(), fine).evaluate(n).value;

  const auto mus = hull::mu_grid(fine.mu_points, fine.mu_max);
  std::vector<double> profile(mus.size(), kNegInf);
  for (std::size_t a = 0; a < mus.size(); ++a) {
    for (int l = 0; l < fine.phi_points; ++l) {
      profile[a] = std::max(profile[a], hc.objective(n, mus[a], kTwoPi * l / fine.phi_points));
    }
  }
  double best = *std::max_element(profile.begin(), profile.end());
  const double dphi = kTwoPi / fine.phi_points;
  for (std::size_t a : top_local_maxima(profile, fine.refine_candidates)) {
    const double lo = mus[a == 0 ? 0 : a - 1];
    const double hi = mus[std::min(a + 1, mus.size() - 1)];
    auto over_phi = [&](double mu) {
      int best_l = 0;
      double bv = kNegInf;
      for (int l = 0; l < fine.phi_points; ++l) {
        const double v = hc.objective(n, mu, kTwoPi * l / fine.phi_points);
        if (v > bv) {
          bv = v;
          best_l = l;
        }
      }
      const double c = kTwoPi * best_l / fine.phi_points;
      const auto r = detail::maximize_brent([&](double phi) { return hc.objective(n, mu, phi); }, c - dphi, c + dphi);
      return std::max(bv, r.value);
    };
    if (hi > lo) best = std::max(best, detail::maximize_brent(over_phi, lo, hi).value);
  }
  return std::max(0.0, best);
}

SearchOptions without_pins(SearchOptions s) {
  s.pinned.clear();
  return s;
}

}  // namespace

CertifyOutcome certify_nonclassical(const ClassicalSupport& hc, const ExpectationVector& x, const CertifyOptions& opts) {
  if (!(x.space() == hc.space())) throw DomainError("data and support evaluator use different spaces");
  if (x.space().size() > 6) throw UnsupportedSpaceError("certificate search supports at most 6 observables");
  const Eigen::VectorXd xv = x.as_eigen();
  CertifyOutcome out;

  const int qdim = opts.quantum_dim > 0 ? opts.quantum_dim : x.space().max_index() + 2;
  const auto& space = x.space();
  out.quantum = maximize_margin(
      [&](const Eigen::VectorXd& n, bool) { return quantum_support_value(space, n, qdim); }, xv,
      without_pins(opts.search));
  if (out.quantum.margin > opts.tol_margin) {
    out.status = CertifyStatus::Inconsistent;
    return out;
  }

  out.classical = maximize_margin(
      [&](const Eigen::VectorXd& n, bool fine) { return fine ? hc.evaluate(n).value : hc.coarse(n); }, xv,
      opts.search);
  out.status = CertifyStatus::NoCertificate;
  if (out.classical.margin > opts.tol_margin) {
    Certificate c;
    c.direction = out.classical.direction;
    c.h_classical = out.classical.support;
    c.witness = out.classical.witness;
    c.margin = out.classical.margin;
    c.h_verified = verify_support(hc, c.direction, std::max(1, opts.verify_factor));
    c.margin_verified = c.witness - c.h_verified;
    if (c.margin_verified > opts.tol_margin) {
      out.status = CertifyStatus::Certified;
      out.certificate = std::move(c);
    }
  }
  return out;
}

CertifyOutcome certify_nonclassical(const ExpectationVector& x, const CertifyOptions& opts) {
  return certify_nonclassical(ClassicalSupport(x.space(), opts.classical), x, opts);
}

LegendreResult legendre_profile(const ObservableSpace& space, int fixed_index, double fixed_value, int free_index,
                                const ClassicalOptions& opts) {
  if (space.size() != 2) throw DomainError("legendre profile needs a two-observable space");
  if (fixed_index == free_index || fixed_index < 0 || free_index < 0 || fixed_index > 1 || free_index > 1) {
    throw DomainError("fixed and free indices must be 0 and 1 in some order");
  }
  const ClassicalSupport hc(space, opts);
  auto g = [&](double a) {
    Eigen::VectorXd n(2);
    n(fixed_index) = a;
    n(free_index) = 1.0;
    return hc.evaluate(n).value - a * fixed_value;
  };
  // g is convex in a; walk outwards until it turns up on both sides.
  double lo = -1.0;
  double mid = 0.0;
  double hi = 1.0;
  double glo = g(lo);
  double gmid = g(mid);
  double ghi = g(hi);
  for (int it = 0; it < 60 && !(glo >= gmid && ghi >= gmid); ++it) {
    if (glo < gmid) {
      const double width = mid - lo;
      hi = mid;
      ghi = gmid;
      mid = lo;
      gmid = glo;
      lo = mid - 2.0 * width;
      glo = g(lo);
    } else {
      const double width = hi - mid;
      lo = mid;
      glo = gmid;
      mid = hi;
      gmid = ghi;
      hi = mid + 2.0 * width;
      ghi = g(hi);
    }
  }
  if (!(glo >= gmid && ghi >= gmid)) {
    throw ConvergenceError("legendre profile diverges at fixed value " + std::to_string(fixed_value));
  }
  const auto r = detail::maximize_brent([&](double a) { return -g(a); }, lo, hi);
  return {-r.value, r.x};
}

double x02_p0_p2_support_closed_form(double b) {
  double best = std::max(0.0, b);  // mu -> infinity and mu = 0
  if (b <= 0.75) {
    const double mu = (2.0 - std::sqrt(2.0)) / 2.0 + std::sqrt(6.0 - 8.0 * b) / 2.0;
    best = std::max(best, 0.5 * std::exp(-mu) * (mu * mu + std::sqrt(2.0) * mu + 2.0 * b));
  }
  return best;
}

double x02_p0_p2_transition_b() {
  auto gap = [](double b) {
    const double mu = (2.0 - std::sqrt(2.0)) / 2.0 + std::sqrt(6.0 - 8.0 * b) / 2.0;
    return 0.5 * std::exp(-mu) * (mu * mu + std::sqrt(2.0) * mu + 2.0 * b) - b;
  };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(gap, 0.6, 0.75, boost::math::tools::eps_tolerance<double>(50),
                                                   iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace fockcert::support
