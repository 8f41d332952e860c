#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fockcert/channels.hpp"
#include "fockcert/observable.hpp"
#include "fockcert/state.hpp"
#include "fockcert/support.hpp"

namespace fockcert::certify {

enum class Verdict { Nonclassical, ClassicalCompatible, InconsistentWithQuantum };

/// "nonclassical", "classical-compatible", "inconsistent".
const char* verdict_name(Verdict v);

struct Classification {
  Verdict verdict = Verdict::ClassicalCompatible;
  /// Present iff verdict is Nonclassical; always re-verified.
  std::optional<support::Certificate> certificate;
  /// Stage that decided the verdict, e.g. "x01-given-p0", "support-search",
  /// "probability-sum", "quantum-support".
  std::string criterion;
  /// Signed separation: positive means nonclassical. For inconsistent data it
  /// is the separation from the quantum set.
  double margin = 0.0;
  /// Best direction found by the search (unit norm); empty if no search ran.
  Eigen::VectorXd direction;
  double h_classical = 0.0;
};

struct ClassifyOptions {
  support::CertifyOptions certify;
  /// Use closed-form classical bounds where the space is recognized.
  bool fast_paths = true;
};

/// Closed-form classical test for a recognized space.
struct FastPath {
  std::string name;
  /// Exact paths decide both ways; sufficient-only paths can only flag
  /// nonclassicality.
  bool exact = true;
  double value = 0.0;  // measured quantity
  double bound = 0.0;  // its classical maximum
  bool nonclassical() const;
};

/// The closed-form test that applies to x, if any.
std::optional<FastPath> fast_path(const ExpectationVector& x);

/// Analytic quantum-consistency checks on raw values (range, probability
/// sum, 2x2 positivity). Returns the violated criterion, if any.
std::optional<std::string> quantum_precheck(const ObservableSpace& space, const std::vector<double>& values);

/// Full pipeline: analytic quantum checks, closed-form classical checks for
/// recognized spaces, then the certificate search. Throws
/// UnsupportedSpaceError for spaces above 6 observables.
Classification classify(const ObservableSpace& space, const std::vector<double>& values,
                        const ClassifyOptions& opts = {});
Classification classify(const ExpectationVector& x, const ClassifyOptions& opts = {});
/// Same, reusing a classical support evaluator built for x's space.
Classification classify(const support::ClassicalSupport& hc, const ObservableSpace& space,
                        const std::vector<double>& values, const ClassifyOptions& opts = {});

/// Expectations of the family after attenuation (amplitude t = sqrt(T) e^{i phi})
/// followed by thermal noise nbar.
std::vector<double> family_values(const channels::StateFamily& family, const ObservableSpace& space, double T,
                                  double nbar, double phi = 0.0, const channels::ThermalParams& tp = {});

/// Reuses one thermal channel per nbar for repeated family evaluations.
class FamilyEvaluator {
 public:
  FamilyEvaluator(channels::StateFamily family, ObservableSpace space, channels::ThermalParams tp = {});

  std::vector<double> values(double T, double nbar, double phi = 0.0);
  const channels::StateFamily& family() const { return family_; }
  const ObservableSpace& space() const { return space_; }

 private:
  channels::StateFamily family_;
  ObservableSpace space_;
  channels::ThermalParams tp_;
  int in_dim_;
  int out_dim_;
  std::map<double, std::shared_ptr<const channels::ThermalChannel>> cache_;
};

enum class PathParameter { T, Nbar };

struct ThresholdPath {
  PathParameter parameter = PathParameter::T;
  double lo = 0.0;
  double hi = 1.0;
  /// The parameter that stays fixed (nbar on a T path, T on an nbar path).
  double fixed = 0.0;
  double phi = 0.0;
};

struct ThresholdResult {
  std::string parameter;  // "T" or "nbar"
  bool found = false;
  /// Midpoint of the final bracket.
  double critical = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
  std::string space;
};

/// Bisection on the noise parameter until the bracket where the verdict
/// flips is at most `resolution` wide. found = false if both ends agree.
ThresholdResult find_threshold(const channels::StateFamily& family, const ObservableSpace& space,
                               const ThresholdPath& path, double resolution = 1e-3,
                               const ClassifyOptions& opts = {});

struct RegionPoint {
  double T = 0.0;
  double nbar = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::ClassicalCompatible;
  /// Channel or search failure; margin and verdict are then meaningless.
  bool error = false;
  std::string message;
};

struct RegionMap {
  std::string family;
  std::string space;
  std::vector<double> Ts;
  std::vector<double> nbars;
  /// Row-major: nbar outer, T inner.
  std::vector<RegionPoint> points;
  const RegionPoint& at(std::size_t nbar_index, std::size_t T_index) const {
    return points[nbar_index * Ts.size() + T_index];
  }
};

/// Uniform grid of n points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

/// Applies the channels and the certificate search at every grid point.
/// Classification uses the search margin throughout (no closed-form
/// shortcuts), so margins are comparable across the grid.
RegionMap region_map(const channels::StateFamily& family, const ObservableSpace& space,
                     const std::vector<double>& Ts, const std::vector<double>& nbars,
                     const ClassifyOptions& opts = {}, const channels::ThermalParams& tp = {});

/// Grid points (nbar index, T index) where the nonclassical region grows
/// with nbar: nonclassical at nbar_{i+1} but not at nbar_i.
std::vector<std::pair<std::size_t, std::size_t>> monotonicity_violations(const RegionMap& map);

/// Lowest T on row nbar_index where the verdict turns nonclassical and stays
/// so up to T = 1, linearly interpolated in the margin; nullopt if none.
std::optional<double> row_crossing(const RegionMap& map, std::size_t nbar_index);

}  // namespace fockcert::certify
