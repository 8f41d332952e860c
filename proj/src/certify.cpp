#include "fockcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "fockcert/errors.hpp"
#include "fockcert/hull.hpp"

namespace fockcert::certify {

namespace {

constexpr double kEps = hull::kBoundaryTol;
constexpr int kEnvelopeGrid = 2048;

const hull::NumericEnvelope& cached_envelope(int pivot, int bound) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<hull::NumericEnvelope>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{pivot, bound}];
  if (!slot) slot = std::make_unique<hull::NumericEnvelope>(pivot, bound, kEnvelopeGrid);
  return *slot;
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Nonclassical:
      return "nonclassical";
    case Verdict::ClassicalCompatible:
      return "classical-compatible";
    case Verdict::InconsistentWithQuantum:
      break;
  }
  return "inconsistent";
}

bool FastPath::nonclassical() const { return value > bound + kEps; }

std::optional<FastPath> fast_path(const ExpectationVector& x) {
  const auto& space = x.space();
  if (space.size() == 1) {
    const auto& o = space[0];
    if (o.is_projector()) return std::nullopt;
    return FastPath{"coherence-bound", true, std::abs(x[0]), hull::classical_coherence_bound(o.j(), o.k())};
  }
  if (space.size() != 2) return std::nullopt;

  const auto& a = space[0];
  const auto& b = space[1];
  if (!a.is_projector() && !b.is_projector()) {
    const bool xy_pair = a.j() == b.j() && a.k() == b.k() &&
                         ((a.kind() == ObservableKind::CoherX && b.kind() == ObservableKind::CoherY) ||
                          (a.kind() == ObservableKind::CoherY && b.kind() == ObservableKind::CoherX));
    if (!xy_pair) return std::nullopt;
    return FastPath{"coherence-disk", true, std::hypot(x[0], x[1]), hull::classical_coherence_bound(a.j(), a.k())};
  }
  if (a.is_projector() && b.is_projector()) {
    const bool p0p1 = (a.j() == 0 && b.j() == 1) || (a.j() == 1 && b.j() == 0);
    if (!p0p1) return std::nullopt;
    const double p0 = clamp01(a.j() == 0 ? x[0] : x[1]);
    const double p1 = a.j() == 1 ? x[0] : x[1];
    return FastPath{"p1-given-p0", true, p1, p0 > 0.0 ? hull::classical_p1_bound_given_p0(p0) : 0.0};
  }

  const std::size_t pi = a.is_projector() ? 0 : 1;
  const auto& proj = space[pi];
  const auto& coh = space[1 - pi];
  const double p = clamp01(x[pi]);
  const double v = std::abs(x[1 - pi]);
  if (proj.j() == 0 && coh.j() == 0 && coh.k() == 1) {
    return FastPath{"x01-given-p0", true, v, p > 0.0 ? hull::classical_x01_bound_given_p0(p) : 0.0};
  }
  if (proj.j() == 0 && coh.j() == 0 && coh.k() == 2) {
    return FastPath{"x02-given-p0", true, v, p > 0.0 ? hull::classical_x02_bound_given_p0(p) : 0.0};
  }
  if (proj.j() == coh.j() || proj.j() == coh.k()) {
    const int other = proj.j() == coh.j() ? coh.k() : coh.j();
    const auto bound = cached_envelope(proj.j(), other).coherence_bound(p);
    return FastPath{"envelope-coherence", false, v, bound.value_or(0.0)};
  }
  return std::nullopt;
}

std::optional<std::string> quantum_precheck(const ObservableSpace& space, const std::vector<double>& values) {
  if (values.size() != space.size()) {
    throw DomainError("expected " + std::to_string(space.size()) + " values, got " + std::to_string(values.size()));
  }
  double psum = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!std::isfinite(values[i])) throw DomainError("values must be finite");
    if (space[i].is_projector()) {
      if (values[i] < -kEps || values[i] > 1.0 + kEps) return "projector-range";
      psum += values[i];
    } else if (std::abs(values[i]) > 1.0 + kEps) {
      return "coherence-range";
    }
  }
  if (psum > 1.0 + kEps) return "probability-sum";

  auto population = [&](int j) -> std::optional<double> {
    const int idx = space.index_of(ObservableId::projector(j));
    if (idx < 0) return std::nullopt;
    return clamp01(values[static_cast<std::size_t>(idx)]);
  };
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& o = space[i];
    if (o.is_projector()) continue;
    double x = values[i];
    double y = 0.0;
    if (o.kind() == ObservableKind::CoherX) {
      const int yi = space.index_of(ObservableId::coher_y(o.j(), o.k()));
      if (yi >= 0) y = values[static_cast<std::size_t>(yi)];
    }
    if (x * x + y * y > 1.0 + kEps) return "coherence-modulus";
    const auto pj = population(o.j());
    const auto pk = population(o.k());
    if (pj && pk) {
      if (!hull::psd_2x2(*pj, *pk, x, y)) return "psd-2x2";
    } else if (pj || pk) {
      const double bound = hull::quantum_r_bound_given_pj(pj ? *pj : *pk);
      if (std::hypot(x, y) > bound + kEps) return "coherence-given-population";
    }
  }
  return std::nullopt;
}

Classification classify(const support::ClassicalSupport& hc, const ObservableSpace& space,
                        const std::vector<double>& values, const ClassifyOptions& opts) {
  if (space.size() > 6) throw UnsupportedSpaceError("spaces above 6 observables are not supported");
  Classification c;
  if (const auto why = quantum_precheck(space, values)) {
    c.verdict = Verdict::InconsistentWithQuantum;
    c.criterion = *why;
    return c;
  }
  std::vector<double> clamped = values;
  for (std::size_t i = 0; i < space.size(); ++i) {
    clamped[i] = space[i].is_projector() ? clamp01(values[i]) : std::clamp(values[i], -1.0, 1.0);
  }
  const ExpectationVector x(space, clamped);

  std::optional<FastPath> fp;
  if (opts.fast_paths) fp = fast_path(x);
  if (fp && fp->exact && !fp->nonclassical()) {
    c.verdict = Verdict::ClassicalCompatible;
    c.criterion = fp->name;
    c.margin = fp->value - fp->bound;
    return c;
  }

  const auto out = support::certify_nonclassical(hc, x, opts.certify);
  switch (out.status) {
    case support::CertifyStatus::Inconsistent:
      c.verdict = Verdict::InconsistentWithQuantum;
      c.criterion = "quantum-support";
      c.margin = out.quantum.margin;
      c.direction = out.quantum.direction;
      return c;
    case support::CertifyStatus::Certified:
      c.verdict = Verdict::Nonclassical;
      c.criterion = fp && fp->nonclassical() ? fp->name : "support-search";
      c.certificate = out.certificate;
      c.margin = out.certificate->margin_verified;
      c.direction = out.certificate->direction;
      c.h_classical = out.certificate->h_classical;
      return c;
    case support::CertifyStatus::NoCertificate:
      break;
  }
  c.verdict = Verdict::ClassicalCompatible;
  c.criterion = fp && fp->nonclassical() ? fp->name + "-unverified" : "support-search";
  c.margin = out.classical.margin;
  c.direction = out.classical.direction;
  c.h_classical = out.classical.support;
  return c;
}

Classification classify(const ObservableSpace& space, const std::vector<double>& values,
                        const ClassifyOptions& opts) {
  if (space.size() > 6) throw UnsupportedSpaceError("spaces above 6 observables are not supported");
  return classify(support::ClassicalSupport(space, opts.certify.classical), space, values, opts);
}

Classification classify(const ExpectationVector& x, const ClassifyOptions& opts) {
  return classify(x.space(), x.values(), opts);
}

FamilyEvaluator::FamilyEvaluator(channels::StateFamily family, ObservableSpace space, channels::ThermalParams tp)
    : family_(std::move(family)), space_(std::move(space)), tp_(tp) {
  in_dim_ = family_.max_index() + 1;
  out_dim_ = std::max(space_.max_index() + 1, in_dim_);
}

std::vector<double> FamilyEvaluator::values(double T, double nbar, double phi) {
  const auto p = channels::BeamsplitterParams::make(T, phi);
  const Eigen::MatrixXcd attenuated =
      channels::attenuate_kraus_matrix(family_.state(in_dim_).entries(), p, in_dim_);
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(out_dim_, out_dim_);
  if (nbar == 0.0) {
    block.topLeftCorner(in_dim_, in_dim_) = attenuated;
  } else {
    auto& ch = cache_[nbar];
    if (!ch) {
      channels::ThermalParams tp = tp_;
      tp.nbar = nbar;
      ch = std::make_shared<const channels::ThermalChannel>(tp, in_dim_, out_dim_);
    }
    block = ch->apply(attenuated);
  }
  std::vector<double> v;
  v.reserve(space_.size());
  for (const auto& o : space_) v.push_back(trace_product(block, o).real());
  return v;
}

std::vector<double> family_values(const channels::StateFamily& family, const ObservableSpace& space, double T,
                                  double nbar, double phi, const channels::ThermalParams& tp) {
  FamilyEvaluator ev(family, space, tp);
  return ev.values(T, nbar, phi);
}

ThresholdResult find_threshold(const channels::StateFamily& family, const ObservableSpace& space,
                               const ThresholdPath& path, double resolution, const ClassifyOptions& opts) {
  if (!(resolution > 0.0)) throw ConfigError("threshold resolution must be positive");
  if (!(path.hi > path.lo)) throw DomainError("threshold path needs lo < hi");
  FamilyEvaluator ev(family, space);
  const support::ClassicalSupport hc(space, opts.certify.classical);
  auto nonclassical = [&](double s) {
    const double T = path.parameter == PathParameter::T ? s : path.fixed;
    const double nbar = path.parameter == PathParameter::T ? path.fixed : s;
    return classify(hc, space, ev.values(T, nbar, path.phi), opts).verdict == Verdict::Nonclassical;
  };

  ThresholdResult r;
  r.parameter = path.parameter == PathParameter::T ? "T" : "nbar";
  r.space = space.name();
  double lo = path.lo;
  double hi = path.hi;
  const bool at_lo = nonclassical(lo);
  if (at_lo == nonclassical(hi)) {
    r.lo = lo;
    r.hi = hi;
    r.width = hi - lo;
    return r;
  }
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (nonclassical(mid) == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.found = true;
  r.lo = lo;
  r.hi = hi;
  r.width = hi - lo;
  r.critical = 0.5 * (lo + hi);
  return r;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

RegionMap region_map(const channels::StateFamily& family, const ObservableSpace& space,
                     const std::vector<double>& Ts, const std::vector<double>& nbars, const ClassifyOptions& opts,
                     const channels::ThermalParams& tp) {
  for (double T : Ts) {
    if (!(T >= 0.0 && T <= 1.0)) throw DomainError("T grid must lie in [0, 1]");
  }
  for (double n : nbars) {
    if (!(n >= 0.0) || !std::isfinite(n)) throw DomainError("nbar grid must be finite and >= 0");
  }
  RegionMap map;
  map.family = family.name();
  map.space = space.name();
  map.Ts = Ts;
  map.nbars = nbars;
  map.points.reserve(Ts.size() * nbars.size());

  ClassifyOptions search_only = opts;
  search_only.fast_paths = false;
  const support::ClassicalSupport hc(space, opts.certify.classical);
  FamilyEvaluator ev(family, space, tp);
  for (double nbar : nbars) {
    for (double T : Ts) {
      RegionPoint pt;
      pt.T = T;
      pt.nbar = nbar;
      try {
        const auto c = classify(hc, space, ev.values(T, nbar), search_only);
        pt.margin = c.margin;
        pt.verdict = c.verdict;
      } catch (const Error& e) {
        pt.error = true;
        pt.message = e.what();
      }
      map.points.push_back(std::move(pt));
    }
  }
  return map;
}

std::vector<std::pair<std::size_t, std::size_t>> monotonicity_violations(const RegionMap& map) {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t i = 0; i + 1 < map.nbars.size(); ++i) {
    for (std::size_t t = 0; t < map.Ts.size(); ++t) {
      const auto& here = map.at(i, t);
      const auto& next = map.at(i + 1, t);
      if (here.error || next.error) continue;
      if (next.verdict == Verdict::Nonclassical && here.verdict != Verdict::Nonclassical) bad.emplace_back(i + 1, t);
    }
  }
  return bad;
}

std::optional<double> row_crossing(const RegionMap& map, std::size_t nbar_index) {
  const std::size_t n = map.Ts.size();
  if (n == 0) return std::nullopt;
  auto nc = [&](std::size_t t) {
    const auto& p = map.at(nbar_index, t);
    return !p.error && p.verdict == Verdict::Nonclassical;
  };
  if (!nc(n - 1)) return std::nullopt;
  std::size_t k = n - 1;
  while (k > 0 && nc(k - 1)) --k;
  if (k == 0) return map.Ts.front();
  const auto& a = map.at(nbar_index, k - 1);
  const auto& b = map.at(nbar_index, k);
  if (a.error || !(b.margin > a.margin)) return b.T;
  const double w = std::clamp(-a.margin / (b.margin - a.margin), 0.0, 1.0);
  return a.T + w * (b.T - a.T);
}

}  // namespace fockcert::certify
