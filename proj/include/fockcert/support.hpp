#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fockcert/observable.hpp"
#include "fockcert/state.hpp"

namespace fockcert::support {

/// Normal vector n of a supporting hyperplane, one component per observable.
class Direction {
 public:
  /// Throws DomainError if all components vanish or any is non-finite.
  explicit Direction(Eigen::VectorXd components);
  Direction(std::initializer_list<double> components);

  const Eigen::VectorXd& components() const { return components_; }
  std::size_t size() const { return static_cast<std::size_t>(components_.size()); }
  double operator[](std::size_t i) const { return components_(static_cast<Eigen::Index>(i)); }
  Direction normalized() const;

 private:
  Eigen::VectorXd components_;
};

struct ClassicalOptions {
  double mu_max = 50.0;
  /// Coarse geometric mu grid (plus mu = 0).
  int mu_points = 512;
  /// Coarse phase grid; only used when the space mixes coherence orders.
  int phi_points = 64;
  /// Number of coarse local maxima polished by Brent refinement.
  int refine_candidates = 3;
  bool refine = true;
  /// Align the phase analytically when at most one coherence order occurs.
  bool phase_fast_path = true;
};

struct SupportResult {
  double value = 0.0;
  /// Classical maximizer; nullopt means the mu -> infinity limit point, where
  /// every observable vanishes.
  std::optional<CoherentParams> coherent;
  /// Quantum maximizer (top eigenvector); empty for classical results.
  Eigen::VectorXcd eigenvector;
  int restarts_used = 0;
  bool converged = true;
};

/// Classical support function h_C(n) = sup over coherent states (and their
/// mu -> infinity limit) of sum_i n_i <O_i>. Precomputes the coherent-state
/// tables for one space so that many directions can be evaluated cheaply.
class ClassicalSupport {
 public:
  explicit ClassicalSupport(ObservableSpace space, ClassicalOptions opts = {});

  const ObservableSpace& space() const { return space_; }
  const ClassicalOptions& options() const { return opts_; }
  /// True when the phase is maximized analytically.
  bool analytic_phase() const { return analytic_phase_; }

  SupportResult evaluate(const Eigen::VectorXd& n) const;
  /// Grid-only value (a lower bound on h_C), without refinement.
  double coarse(const Eigen::VectorXd& n) const;
  /// sum_i n_i <O_i> at a single coherent state.
  double objective(const Eigen::VectorXd& n, double mu, double phi) const;

 private:
  struct Term {
    int order;
    cplx weight;
    double half_log_norm;  // (j + k)/2 exponent of mu
    double log_fact;       // (lgamma(j+1) + lgamma(k+1)) / 2
  };

  double amplitude(const Term& t, double mu) const;
  // Max over phi of the objective at fixed mu, with the maximizing phase.
  std::pair<double, double> phase_max(const Eigen::VectorXd& n, double mu) const;
  void accumulate(const Eigen::VectorXd& n, std::vector<double>& acc, std::vector<double>& re,
                  std::vector<double>& im) const;

  ObservableSpace space_;
  ClassicalOptions opts_;
  std::vector<Term> terms_;
  int coherence_order_ = 0;  // the single order when analytic_phase_
  bool analytic_phase_ = false;
  std::vector<double> mus_;
  std::vector<double> phis_;
  // Analytic phase: per observable, real column (order 0) or re/im columns
  // of w * sqrt(P_j P_k) over mus_. Otherwise one column over mus_ x phis_.
  std::vector<std::vector<double>> col_re_;
  std::vector<std::vector<double>> col_im_;
};

SupportResult support_classical(const ObservableSpace& space, const Direction& n,
                                const ClassicalOptions& opts = {});

/// h_Q(n) = max(0, lambda_max(sum_i n_i O_i)) at truncation dim. Throws
/// ConfigError if dim < space.max_index() + 2.
SupportResult support_quantum(const ObservableSpace& space, const Direction& n, int dim);

/// Largest eigenvalue, clamped at zero, of sum_i n_i O_i; no allocation of
/// observable matrices beyond the assembled operator.
double quantum_support_value(const ObservableSpace& space, const Eigen::VectorXd& n, int dim);

struct SearchOptions {
  /// Coarse grid points per spherical angle (d <= 3).
  int angle_points = 64;
  /// Coarse random directions for d >= 4.
  int random_directions = 4096;
  /// Best coarse directions that are locally refined.
  int refine_starts = 4;
  std::uint64_t seed = 0x5eedULL;
  /// Optional fixed direction components; free components range over
  /// [-pinned_box, pinned_box] before normalization.
  std::vector<std::optional<double>> pinned;
  double pinned_box = 4.0;
};

struct MarginResult {
  Eigen::VectorXd direction;  // unit norm
  double support = 0.0;       // h(direction)
  double witness = 0.0;       // direction . x
  double margin = 0.0;        // witness - support
  int evaluations = 0;
};

/// Support function callback: h(n) for unit n; `fine` selects the refined
/// evaluation, otherwise a cheaper lower bound may be returned.
using SupportFn = std::function<double(const Eigen::VectorXd& n, bool fine)>;

/// Maximizes n . x - h(n) over unit directions (or over the pinned slice).
/// A positive maximum separates x from the convex set with support h.
MarginResult maximize_margin(const SupportFn& h, const Eigen::VectorXd& x, const SearchOptions& opts = {});

struct Certificate {
  Eigen::VectorXd direction;  // unit norm
  double h_classical = 0.0;
  double witness = 0.0;
  double margin = 0.0;
  /// h_C re-evaluated on a finer grid, and the margin it implies.
  double h_verified = 0.0;
  double margin_verified = 0.0;
};

struct CertifyOptions {
  ClassicalOptions classical;
  SearchOptions search;
  double tol_margin = 1e-6;
  /// Grid refinement factor for the independent re-verification.
  int verify_factor = 10;
  /// Truncation for the quantum-consistency check; 0 means max_index + 2.
  int quantum_dim = 0;
};

enum class CertifyStatus { Certified, NoCertificate, Inconsistent };

struct CertifyOutcome {
  CertifyStatus status = CertifyStatus::NoCertificate;
  std::optional<Certificate> certificate;
  /// Best classical margin found (positive iff certified); for
  /// ClassicalCompatible data it is minus the depth inside the classical set.
  MarginResult classical;
  /// Best separation from the quantum set (positive means inconsistent).
  MarginResult quantum;
};

/// Searches for n with n . x > h_C(n). Data outside the quantum set are
/// reported as Inconsistent rather than certified.
CertifyOutcome certify_nonclassical(const ExpectationVector& x, const CertifyOptions& opts = {});

/// Same, reusing a prebuilt classical support evaluator for the space.
CertifyOutcome certify_nonclassical(const ClassicalSupport& hc, const ExpectationVector& x,
                                    const CertifyOptions& opts = {});

struct LegendreResult {
  double value;  // classical envelope of the free observable
  double slope;  // optimal coefficient of the fixed observable
};

/// min_a [h_C(a e_fixed + e_free) - a * fixed_value] for a two-observable
/// space: the largest classical value of the free observable at the given
/// value of the fixed one. Throws ConvergenceError if the minimum runs off
/// to infinity (no classical state with that fixed value).
LegendreResult legendre_profile(const ObservableSpace& space, int fixed_index, double fixed_value,
                                int free_index, const ClassicalOptions& opts = {});

/// Closed form of h_C(0.5, b, 1) in the (X02, P0, P2) space for b <= 3/4:
/// (1/2) e^{-mu+} (mu+^2 + sqrt2 mu+ + 2b), mu+ = (2 - sqrt2)/2 + sqrt(6 - 8b)/2,
/// and b beyond the transition.
double x02_p0_p2_support_closed_form(double b);

/// Transition b at which the interior maximum and the vacuum value b tie.
double x02_p0_p2_transition_b();

}  // namespace fockcert::support
