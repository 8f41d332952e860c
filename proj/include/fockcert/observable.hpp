#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace fockcert {

using cplx = std::complex<double>;

enum class ObservableKind { Projector, CoherX, CoherY, CoherR };

/// A single Fock-basis observable: a projector |j><j| or one of the Hermitian
/// coherence combinations X_jk, Y_jk, R_jk(theta) with j < k.
class ObservableId {
 public:
  static ObservableId projector(int j);
  /// X_jk = |j><k| + |k><j|. Symmetric, so (k, j) is stored as (j, k).
  static ObservableId coher_x(int j, int k);
  /// Y_jk = i(|k><j| - |j><k|). Requires j < k; Y_kj = -Y_jk has no Y form.
  static ObservableId coher_y(int j, int k);
  /// R_jk(theta) = cos(theta) X_jk + sin(theta) Y_jk, theta wrapped to [0, 2pi).
  /// R_kj(theta) is stored as R_jk(2pi - theta).
  static ObservableId coher_r(int j, int k, double theta);

  ObservableKind kind() const { return kind_; }
  int j() const { return j_; }
  int k() const { return k_; }
  double theta() const { return theta_; }
  bool is_projector() const { return kind_ == ObservableKind::Projector; }
  int max_index() const { return k_; }
  /// Harmonic order k - j of the coherence; 0 for projectors.
  int order() const { return k_ - j_; }

  /// Coefficient w such that the expectation on a state is Re(w * rho_jk)
  /// (rho_jk = <j|rho|k>). Projectors return 1 and use rho_jj.
  cplx trace_weight() const;

  /// Canonical text form, e.g. "P0", "X01", "Y12", "R01@1.5", "X[10][12]".
  std::string name() const;

  friend bool operator==(const ObservableId& a, const ObservableId& b);

 private:
  ObservableId(ObservableKind kind, int j, int k, double theta)
      : kind_(kind), j_(j), k_(k), theta_(theta) {}

  ObservableKind kind_;
  int j_;
  int k_;
  double theta_;
};

/// Dense dim x dim matrix of the observable in the truncated Fock basis.
Eigen::MatrixXcd observable_matrix(const ObservableId& obs, int dim);

/// Ordered, duplicate-free list of observables: the coordinate system in
/// which classical and quantum sets are drawn.
class ObservableSpace {
 public:
  explicit ObservableSpace(std::vector<ObservableId> observables);

  std::size_t size() const { return observables_.size(); }
  const ObservableId& operator[](std::size_t i) const { return observables_[i]; }
  const std::vector<ObservableId>& observables() const { return observables_; }
  auto begin() const { return observables_.begin(); }
  auto end() const { return observables_.end(); }

  int max_index() const { return max_index_; }
  /// Default truncation: one level above the largest referenced index.
  int default_dim() const { return max_index_ + 2; }

  /// Position of obs in the space, or -1.
  int index_of(const ObservableId& obs) const;
  bool contains(const ObservableId& obs) const { return index_of(obs) >= 0; }

  /// Comma-separated canonical names, e.g. "P0,X01".
  std::string name() const;

  friend bool operator==(const ObservableSpace& a, const ObservableSpace& b) {
    return a.observables_ == b.observables_;
  }

 private:
  std::vector<ObservableId> observables_;
  int max_index_ = 0;
};

/// Parses a single observable token: P<j>, X<j><k>, Y<j><k>, R<j><k>@<theta>.
/// Multi-digit indices are bracketed: X[10][12]. P takes any digit run.
ObservableId parse_observable(std::string_view token);

/// Parses a comma-separated list of observable tokens.
ObservableSpace parse_space(std::string_view spec);

}  // namespace fockcert
