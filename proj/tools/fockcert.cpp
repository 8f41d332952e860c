// fockcert: bounds, certificates, support functions, noise sweeps and curve
// export for Fock-basis nonclassicality tests.
//
// Exit codes: 0 classical-compatible, 10 nonclassical, 11 inconsistent with
// any quantum state, 2 usage or parse error, 1 other failures.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockcert/certify.hpp"
#include "fockcert/channels.hpp"
#include "fockcert/errors.hpp"
#include "fockcert/hull.hpp"
#include "fockcert/kernels.hpp"
#include "fockcert/support.hpp"

using namespace fockcert;
using json = nlohmann::json;

namespace {

constexpr int kExitClassical = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonclassical = 10;
constexpr int kExitInconsistent = 11;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* kRecognizedBounds =
    "X<j><k> / Y<j><k> / R<j><k>@theta (1D coherence bound), X<j><k>,Y<j><k> (coherence disk), "
    "P0,X01 / P0,Y01 / P0,R01@theta, P0,X02, P0,P1, P<i>,X<i><j> (envelope), P<i>,P<j> (envelope)";

std::string fmt(double v, const char* f = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(',', pos), s.size());
    std::string tok = s.substr(pos, end - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.erase(tok.begin());
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
    double v = 0.0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("bad number '" + tok + "'");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

// lo:hi:n
std::vector<double> parse_range(const std::string& s, const char* what) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ':', ',');
  const auto v = parse_doubles(t);
  if (v.size() == 1) return {v[0]};
  if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2])) {
    throw UsageError(std::string(what) + " range must be lo:hi:n or a single value");
  }
  return certify::linspace(v[0], v[1], static_cast<int>(v[2]));
}

std::string extension(const std::string& path) {
  const auto dot = path.rfind('.');
  return dot == std::string::npos ? "" : path.substr(dot);
}

void emit(const std::string& text, const std::string& out, const char* want_ext) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  if (extension(out) != want_ext) {
    throw UsageError("output '" + out + "' must have extension " + want_ext);
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + out + "'");
  f << text;
}

int env_dim() {
  const char* e = std::getenv("FOCKCERT_DIM");
  if (!e || !*e) return 0;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(e, e + std::strlen(e), v);
  if (ec != std::errc() || *ptr != '\0' || v < 2) throw UsageError("FOCKCERT_DIM must be an integer >= 2");
  return v;
}

json json_number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

int verdict_exit(certify::Verdict v) {
  switch (v) {
    case certify::Verdict::Nonclassical:
      return kExitNonclassical;
    case certify::Verdict::InconsistentWithQuantum:
      return kExitInconsistent;
    case certify::Verdict::ClassicalCompatible:
      break;
  }
  return kExitClassical;
}

struct Common {
  int dim = 0;  // quantum truncation; 0 = env or default
  std::uint64_t seed = 0x5eed;
  double tol = 1e-6;
};

certify::ClassifyOptions classify_options(const Common& c) {
  certify::ClassifyOptions o;
  o.certify.search.seed = c.seed;
  o.certify.tol_margin = c.tol;
  o.certify.quantum_dim = c.dim > 0 ? c.dim : env_dim();
  return o;
}

// ---- bound ----

int cmd_bound(const std::string& space_spec, const std::string& at, int grid, const std::string& out) {
  const auto space = parse_space(space_spec);
  std::optional<double> at_value;
  if (!at.empty()) {
    const auto eq = at.find('=');
    if (eq == std::string::npos) throw UsageError("--at expects NAME=VALUE");
    const auto obs = parse_observable(at.substr(0, eq));
    const auto v = parse_doubles(at.substr(eq + 1));
    if (v.size() != 1) throw UsageError("--at expects a single value");
    if (!space.contains(obs) || !obs.is_projector()) throw UsageError("--at must name a projector of the space");
    if (space.size() != 2) throw UsageError("--at only applies to two-observable spaces");
    at_value = v[0];
  }

  if (space.size() == 1 && !space[0].is_projector()) {
    emit(fmt(hull::classical_coherence_bound(space[0].j(), space[0].k())) + "\n", out, ".txt");
    return 0;
  }
  if (space.size() == 2 && !space[0].is_projector() && !space[1].is_projector() && space[0].j() == space[1].j() &&
      space[0].k() == space[1].k()) {
    emit(fmt(hull::classical_coherence_bound(space[0].j(), space[0].k())) + "\n", out, ".txt");
    return 0;
  }
  if (space.size() != 2) throw UsageError(std::string("no boundary for this space; recognized: ") + kRecognizedBounds);

  const std::size_t pi = space[0].is_projector() ? 0 : 1;
  const auto& pivot = space[pi];
  const auto& other = space[1 - pi];
  if (!pivot.is_projector()) throw UsageError(std::string("no boundary for this space; recognized: ") + kRecognizedBounds);
  int bound_index = -1;
  if (other.is_projector()) {
    bound_index = other.j();
  } else if (other.j() == pivot.j() || other.k() == pivot.j()) {
    bound_index = other.j() == pivot.j() ? other.k() : other.j();
  } else {
    throw UsageError(std::string("no boundary for this space; recognized: ") + kRecognizedBounds);
  }

  // Closed forms first.
  auto closed = [&](double p) -> std::optional<double> {
    if (pivot.j() != 0) return std::nullopt;
    if (p <= 0.0) return 0.0;
    if (other.is_projector() && other.j() == 1) return hull::classical_p1_bound_given_p0(p);
    if (!other.is_projector() && other.j() == 0 && other.k() == 1) return hull::classical_x01_bound_given_p0(p);
    if (!other.is_projector() && other.j() == 0 && other.k() == 2) return hull::classical_x02_bound_given_p0(p);
    return std::nullopt;
  };
  const hull::NumericEnvelope env(pivot.j(), bound_index, grid);
  auto value_at = [&](double p) -> std::optional<double> {
    if (const auto c = closed(p)) return c;
    return other.is_projector() ? env.upper(p) : env.coherence_bound(p);
  };

  if (at_value) {
    if (*at_value < 0.0 || *at_value > 1.0) throw DomainError("probability must lie in [0, 1]");
    const auto v = value_at(*at_value);
    if (!v) throw DomainError("no classical state has " + pivot.name() + " = " + fmt(*at_value));
    emit(fmt(*v) + "\n", out, ".txt");
    return 0;
  }
  std::string csv = pivot.name() + "," + other.name() + "_max\n";
  for (const auto& pt : env.upper_chain()) {
    const auto v = value_at(pt.x);
    if (v) csv += fmt(pt.x, "%.10g") + "," + fmt(*v, "%.10g") + "\n";
  }
  emit(csv, out, ".csv");
  return 0;
}

// ---- certify ----

int cmd_certify(std::string space_spec, const std::string& values_spec, const std::string& input, const std::string& out,
                const Common& common) {
  std::vector<double> values;
  if (!input.empty()) {
    std::ifstream f(input);
    if (!f) throw ParseError("cannot read '" + input + "'");
    json j;
    try {
      f >> j;
      if (j.contains("space")) {
        if (!space_spec.empty() && space_spec != j.at("space").get<std::string>()) {
          throw ParseError("input file space differs from --space");
        }
        space_spec = j.at("space").get<std::string>();
      }
      values = j.at("values").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed input file: ") + e.what());
    }
  } else {
    if (values_spec.empty()) throw UsageError("certify needs --values or --input");
    values = parse_doubles(values_spec);
  }
  if (space_spec.empty()) throw UsageError("certify needs --space");
  const auto space = parse_space(space_spec);
  if (values.size() != space.size()) {
    throw UsageError("space has " + std::to_string(space.size()) + " observables but " +
                     std::to_string(values.size()) + " values were given");
  }
  const auto c = certify::classify(space, values, classify_options(common));

  json j;
  j["space"] = space.name();
  j["values"] = values;
  j["verdict"] = certify::verdict_name(c.verdict);
  j["criterion"] = c.criterion;
  j["margin"] = json_number_or_null(c.margin);
  j["direction"] = vector_json(c.direction);
  j["h_classical"] = c.direction.size() > 0 ? json(c.h_classical) : json(nullptr);
  if (c.certificate) {
    j["h_verified"] = c.certificate->h_verified;
    j["margin_verified"] = c.certificate->margin_verified;
  }
  emit(j.dump(2) + "\n", out, ".json");
  return verdict_exit(c.verdict);
}

// ---- support ----

int cmd_support(const std::string& space_spec, const std::string& dir_spec, const Common& common) {
  const auto space = parse_space(space_spec);
  const auto d = parse_doubles(dir_spec);
  if (d.size() != space.size()) throw UsageError("direction and space sizes differ");
  const support::Direction n(Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size())));
  const auto hc = support::support_classical(space, n);
  const int dim = common.dim > 0 ? common.dim : (env_dim() > 0 ? env_dim() : space.default_dim());
  const auto hq = support::support_quantum(space, n, dim);
  json j;
  j["space"] = space.name();
  j["direction"] = d;
  j["h_classical"] = hc.value;
  if (hc.coherent) {
    j["argmax"] = {{"mu", hc.coherent->mu}, {"phi", hc.coherent->phi}};
  } else {
    j["argmax"] = "mu=inf";
  }
  j["converged"] = hc.converged;
  j["h_quantum"] = hq.value;
  j["quantum_dim"] = dim;
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---- sweep ----

int cmd_sweep(const std::string& family_name, const std::string& space_spec, const std::string& T_spec,
              const std::string& nbar_spec, const std::string& out, const Common& common) {
  const auto family = channels::parse_family(family_name);
  const auto space = parse_space(space_spec);
  const auto Ts = parse_range(T_spec, "T");
  const auto nbars = parse_range(nbar_spec, "nbar");
  const auto map = certify::region_map(family, space, Ts, nbars, classify_options(common));
  std::ostringstream csv;
  csv << "family,space,T,nbar,margin,verdict\n";
  for (const auto& p : map.points) {
    csv << map.family << ",\"" << map.space << "\"," << fmt(p.T, "%.6f") << "," << fmt(p.nbar, "%.6f") << ",";
    if (p.error) {
      csv << ",error\n";
    } else {
      csv << fmt(p.margin, "%.9e") << "," << certify::verdict_name(p.verdict) << "\n";
    }
  }
  emit(csv.str(), out, ".csv");
  return 0;
}

// ---- curve ----

int cmd_curve(const std::string& source, const std::string& space_spec, int samples, double nbar, double mu_max,
              const std::string& out, const Common& common) {
  const auto space = parse_space(space_spec);
  if (samples < 2) throw UsageError("--samples must be >= 2");
  const auto opts = classify_options(common);
  const support::ClassicalSupport hc(space, opts.certify.classical);
  std::ostringstream csv;
  const bool coherent = source == "coherent";
  csv << (coherent ? "mu" : "T");
  for (const auto& o : space) csv << "," << o.name();
  csv << ",verdict\n";

  std::optional<certify::FamilyEvaluator> ev;
  if (!coherent) ev.emplace(channels::parse_family(source), space);
  for (double s : certify::linspace(0.0, coherent ? mu_max : 1.0, samples)) {
    const std::vector<double> v =
        coherent ? coherent_expectations(space, CoherentParams::make(s, 0.0)) : ev->values(s, nbar);
    const auto c = certify::classify(hc, space, v, opts);
    csv << fmt(s, "%.10g");
    for (double x : v) csv << "," << fmt(x, "%.12g");
    csv << "," << certify::verdict_name(c.verdict) << "\n";
  }
  emit(csv.str(), out, ".csv");
  return 0;
}

// ---- threshold ----

int cmd_threshold(const std::string& family_name, const std::string& space_spec, double nbar, double resolution,
                  const Common& common) {
  const auto family = channels::parse_family(family_name);
  const auto space = parse_space(space_spec);
  certify::ThresholdPath path;
  path.fixed = nbar;
  const auto r = certify::find_threshold(family, space, path, resolution, classify_options(common));
  json j;
  j["family"] = family.name();
  j["space"] = r.space;
  j["parameter"] = r.parameter;
  j["nbar"] = nbar;
  j["found"] = r.found;
  j["critical"] = r.found ? json(r.critical) : json(nullptr);
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fock-basis nonclassicality certification"};
  app.require_subcommand(1);
  Common common;
  std::string simd;
  app.add_option("--dim", common.dim, "Fock truncation for quantum checks (default: $FOCKCERT_DIM or max index + 2)");
  app.add_option("--seed", common.seed, "Seed of the random direction search");
  app.add_option("--tol", common.tol, "Certificate margin tolerance");
  app.add_option("--simd", simd, "Kernel backend: scalar or avx2 (default: $FOCKCERT_SIMD or auto)");

  std::string space, at, values, input, out, family, T_range = "0:1:101", nbar_range = "0:1:101", direction;
  int grid = 4096;
  int samples = 101;
  double nbar = 0.0;
  double resolution = 1e-3;
  double mu_max = 6.0;

  auto* bound = app.add_subcommand("bound", "Classical boundary of a recognized space");
  bound->add_option("--space", space, "Observable space, e.g. X01 or P0,X01")->required();
  bound->add_option("--at", at, "Pivot value, e.g. P0=0.2");
  bound->add_option("--grid", grid, "Envelope grid size (>= 64)");
  bound->add_option("--out", out, "Output file (.txt or .csv)");

  auto* cert = app.add_subcommand("certify", "Classify measured expectation values");
  cert->add_option("--space", space, "Observable space");
  cert->add_option("--values", values, "Comma-separated values aligned with the space");
  cert->add_option("--input", input, "JSON file with {\"space\": ..., \"values\": [...]}");
  cert->add_option("--out", out, "Write the JSON result here (.json)");

  auto* sup = app.add_subcommand("support", "Classical and quantum support functions");
  sup->add_option("--space", space, "Observable space")->required();
  sup->add_option("--direction", direction, "Comma-separated direction components")->required();

  auto* sweep = app.add_subcommand("sweep", "Margin grid over transmissivity and thermal noise");
  sweep->add_option("--family", family, "zero-one, zero-two or one-two")->required();
  sweep->add_option("--space", space, "Observable space")->required();
  sweep->add_option("--T", T_range, "T grid lo:hi:n");
  sweep->add_option("--nbar", nbar_range, "nbar grid lo:hi:n");
  sweep->add_option("--out", out, "Output CSV");

  auto* curve = app.add_subcommand("curve", "Coherent curve or family trajectory with verdicts");
  curve->add_option("--family", family, "coherent, zero-one, zero-two or one-two")->required();
  curve->add_option("--space", space, "Observable space")->required();
  curve->add_option("--samples", samples, "Number of samples");
  curve->add_option("--nbar", nbar, "Thermal noise for family trajectories");
  curve->add_option("--mu-max", mu_max, "Largest mean photon number on the coherent curve");
  curve->add_option("--out", out, "Output CSV");

  auto* thr = app.add_subcommand("threshold", "Critical transmissivity by bisection");
  thr->add_option("--family", family, "zero-one, zero-two or one-two")->required();
  thr->add_option("--space", space, "Observable space")->required();
  thr->add_option("--nbar", nbar, "Thermal noise");
  thr->add_option("--resolution", resolution, "Bracket width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!simd.empty()) {
      if (simd == "scalar") {
        kernels::set_backend(kernels::Backend::Scalar);
      } else if (simd == "avx2") {
        kernels::set_backend(kernels::Backend::Avx2);
      } else {
        throw UsageError("--simd must be scalar or avx2");
      }
    }
    if (*bound) return cmd_bound(space, at, grid, out);
    if (*cert) return cmd_certify(space, values, input, out, common);
    if (*sup) return cmd_support(space, direction, common);
    if (*sweep) return cmd_sweep(family, space, T_range, nbar_range, out, common);
    if (*curve) return cmd_curve(family, space, samples, nbar, mu_max, out, common);
    if (*thr) return cmd_threshold(family, space, nbar, resolution, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
