#include "fockcert/hull.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fockcert/errors.hpp"
#include "fockcert/state.hpp"

namespace fockcert::hull {

double classical_coherence_bound(int j, int k) {
  if (j < 0 || k < 0) throw DomainError("Fock indices must be non-negative");
  if (j == k) throw DomainError("classical coherence bound needs j != k");
  const double s = 0.5 * (j + k);
  const double log_val = -s + s * std::log(s) - 0.5 * (std::lgamma(j + 1.0) + std::lgamma(k + 1.0));
  return 2.0 * std::exp(log_val);
}

double quantum_coherence_bound(int j, int k) {
  if (j == k) throw DomainError("quantum coherence bound needs j != k");
  return 1.0;
}

double quantum_r_bound_given_pj(double pj) {
  if (!(pj >= 0.0 && pj <= 1.0)) throw DomainError("P_j must lie in [0, 1]");
  return 2.0 * std::sqrt(pj * (1.0 - pj));
}

double classical_x01_bound_given_p0(double p0) {
  if (!(p0 > 0.0 && p0 <= 1.0)) throw DomainError("P_0 must lie in (0, 1]");
  return 2.0 * p0 * std::sqrt(-std::log(p0));
}

double classical_x02_bound_given_p0(double p0) {
  if (!(p0 > 0.0 && p0 <= 1.0)) throw DomainError("P_0 must lie in (0, 1]");
  return std::sqrt(2.0) * p0 * -std::log(p0);
}

double classical_p1_bound_given_p0(double p0) {
  if (!(p0 > 0.0 && p0 <= 1.0)) throw DomainError("P_0 must lie in (0, 1]");
  return -p0 * std::log(p0);
}

bool psd_2x2(double pi, double pj, double x, double y) {
  constexpr double eps = kBoundaryTol;
  if (pi < -eps || pj < -eps) return false;
  if (pi + pj > 1.0 + eps) return false;
  return x * x + y * y <= 4.0 * pi * pj + eps;
}

bool psd_3x3(double p0, double p1, double p2, std::complex<double> c01, std::complex<double> c02,
             std::complex<double> c12) {
  constexpr double eps = kBoundaryTol;
  if (p0 < -eps || p1 < -eps || p2 < -eps) return false;
  if (p0 + p1 + p2 > 1.0 + eps) return false;
  if (p0 * p1 - std::norm(c01) < -eps) return false;
  if (p0 * p2 - std::norm(c02) < -eps) return false;
  if (p1 * p2 - std::norm(c12) < -eps) return false;
  const double det = p0 * p1 * p2 + 2.0 * (c01 * c12 * std::conj(c02)).real() - p0 * std::norm(c12) -
                     p1 * std::norm(c02) - p2 * std::norm(c01);
  return det >= -eps;
}

bool three_coherence_inequality(double p0, double p1, double p2, std::complex<double> c01,
                                std::complex<double> c02, std::complex<double> c12) {
  if (!(p0 > 0.0 && p1 > 0.0 && p2 > 0.0)) throw DomainError("probabilities must be positive");
  const auto t01 = c01 / std::sqrt(p0 * p1);
  const auto t02 = c02 / std::sqrt(p0 * p2);
  const auto t12 = c12 / std::sqrt(p1 * p2);
  if (std::abs(t01) > 1.0 + kBoundaryTol || std::abs(t02) > 1.0 + kBoundaryTol ||
      std::abs(t12) > 1.0 + kBoundaryTol) {
    return false;
  }
  return std::norm(t01) + std::norm(t02) + std::norm(t12) <=
         1.0 + 2.0 * (t01 * t12 * std::conj(t02)).real() + kBoundaryTol;
}

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Lower and upper monotone chains, both in increasing x.
std::pair<std::vector<Point2>, std::vector<Point2>> monotone_chains(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  std::vector<Point2> lower;
  std::vector<Point2> upper;
  for (const auto& p : pts) {
    while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= 0.0) lower.pop_back();
    lower.push_back(p);
  }
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= 0.0) upper.pop_back();
    upper.push_back(*it);
  }
  std::reverse(upper.begin(), upper.end());
  return {std::move(lower), std::move(upper)};
}

std::optional<double> interpolate(const std::vector<Point2>& chain, double p) {
  constexpr double eps = kBoundaryTol;
  if (chain.empty() || p < chain.front().x - eps || p > chain.back().x + eps) return std::nullopt;
  if (p <= chain.front().x) return chain.front().y;
  if (p >= chain.back().x) return chain.back().y;
  const auto it = std::lower_bound(chain.begin(), chain.end(), p,
                                   [](const Point2& a, double v) { return a.x < v; });
  const Point2& b = *it;
  const Point2& a = *(it - 1);
  if (b.x == a.x) return std::max(a.y, b.y);
  const double w = (p - a.x) / (b.x - a.x);
  return a.y + w * (b.y - a.y);
}

}  // namespace

std::vector<Point2> convex_hull_2d(std::vector<Point2> points) {
  if (points.size() < 3) return points;
  auto [lower, upper] = monotone_chains(std::move(points));
  // Counter-clockwise: lower chain left to right, then upper chain right to left.
  std::vector<Point2> hull(lower.begin(), lower.end());
  for (auto it = upper.rbegin() + 1; it != upper.rend() - 1; ++it) hull.push_back(*it);
  return hull;
}

std::vector<double> mu_grid(int n, double mu_max) {
  if (n < 2) throw ConfigError("mu grid needs at least 2 points");
  std::vector<double> mus;
  mus.reserve(static_cast<std::size_t>(n) + 1);
  mus.push_back(0.0);
  const double lo = std::log(1e-4);
  const double hi = std::log(mu_max);
  for (int i = 0; i < n; ++i) {
    mus.push_back(std::exp(lo + (hi - lo) * i / (n - 1)));
  }
  mus.back() = mu_max;
  return mus;
}

NumericEnvelope::NumericEnvelope(int pivot, int bound, int grid_size) : pivot_(pivot), bound_(bound) {
  if (pivot < 0 || bound < 0) throw DomainError("Fock indices must be non-negative");
  if (pivot == bound) throw DomainError("pivot and bound observables must differ");
  if (grid_size < kMinGrid) {
    throw ConfigError("envelope grid of " + std::to_string(grid_size) + " points is below the minimum " +
                      std::to_string(kMinGrid));
  }
  std::vector<Point2> pts;
  for (double mu : mu_grid(grid_size)) {
    pts.push_back({poisson_prob(pivot, mu), poisson_prob(bound, mu)});
  }
  // mu -> infinity sends every probability to zero.
  pts.push_back({0.0, 0.0});
  auto [lower, upper] = monotone_chains(std::move(pts));
  lower_ = std::move(lower);
  upper_ = std::move(upper);
}

std::optional<double> NumericEnvelope::upper(double p) const { return interpolate(upper_, p); }

std::optional<double> NumericEnvelope::lower(double p) const { return interpolate(lower_, p); }

std::optional<double> NumericEnvelope::coherence_bound(double p) const {
  const auto m = upper(p);
  if (!m) return std::nullopt;
  return 2.0 * std::sqrt(std::max(0.0, p) * std::max(0.0, *m));
}

}  // namespace fockcert::hull
