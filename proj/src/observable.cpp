#include "fockcert/observable.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <stdexcept>

#include "fockcert/errors.hpp"

namespace fockcert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) throw DomainError("rotation angle must be finite");
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

void check_pair(int j, int k) {
  if (j < 0 || k < 0) throw IndexError("Fock indices must be non-negative");
  if (j == k) throw DomainError("coherence observable requires j != k");
}

std::string index_text(int i) {
  return i < 10 ? std::to_string(i) : "[" + std::to_string(i) + "]";
}

}  // namespace

ObservableId ObservableId::projector(int j) {
  if (j < 0) throw IndexError("Fock index must be non-negative");
  return {ObservableKind::Projector, j, j, 0.0};
}

ObservableId ObservableId::coher_x(int j, int k) {
  check_pair(j, k);
  if (j > k) std::swap(j, k);
  return {ObservableKind::CoherX, j, k, 0.0};
}

ObservableId ObservableId::coher_y(int j, int k) {
  check_pair(j, k);
  if (j > k) throw DomainError("Y_jk requires j < k (Y_kj = -Y_jk)");
  return {ObservableKind::CoherY, j, k, 0.0};
}

ObservableId ObservableId::coher_r(int j, int k, double theta) {
  check_pair(j, k);
  if (j > k) {
    std::swap(j, k);
    theta = -theta;
  }
  return {ObservableKind::CoherR, j, k, wrap_angle(theta)};
}

cplx ObservableId::trace_weight() const {
  // Tr(X rho) = 2 Re rho_jk, Tr(Y rho) = -2 Im rho_jk = Re(2i rho_jk),
  // Tr(R rho) = Re(2 e^{i theta} rho_jk).
  switch (kind_) {
    case ObservableKind::Projector: return {1.0, 0.0};
    case ObservableKind::CoherX: return {2.0, 0.0};
    case ObservableKind::CoherY: return {0.0, 2.0};
    case ObservableKind::CoherR: return 2.0 * std::polar(1.0, theta_);
  }
  return {};
}

std::string ObservableId::name() const {
  switch (kind_) {
    case ObservableKind::Projector: return "P" + std::to_string(j_);
    case ObservableKind::CoherX: return "X" + index_text(j_) + index_text(k_);
    case ObservableKind::CoherY: return "Y" + index_text(j_) + index_text(k_);
    case ObservableKind::CoherR: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", theta_);
      return "R" + index_text(j_) + index_text(k_) + "@" + buf;
    }
  }
  return {};
}

bool operator==(const ObservableId& a, const ObservableId& b) {
  return a.kind_ == b.kind_ && a.j_ == b.j_ && a.k_ == b.k_ && a.theta_ == b.theta_;
}

Eigen::MatrixXcd observable_matrix(const ObservableId& obs, int dim) {
  if (dim <= obs.max_index()) {
    throw IndexError("dimension " + std::to_string(dim) + " too small for " + obs.name());
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const int j = obs.j();
  const int k = obs.k();
  if (obs.is_projector()) {
    m(j, j) = 1.0;
    return m;
  }
  // Tr(O rho) = Re(w rho_jk) = (w rho_jk + conj(w) rho_kj) / 2, so
  // O_kj = w / 2 and O_jk = conj(w) / 2.
  const cplx w = obs.trace_weight();
  m(k, j) = 0.5 * w;
  m(j, k) = 0.5 * std::conj(w);
  return m;
}

ObservableSpace::ObservableSpace(std::vector<ObservableId> observables)
    : observables_(std::move(observables)) {
  if (observables_.empty()) throw DomainError("observable space must be non-empty");
  for (std::size_t a = 0; a < observables_.size(); ++a) {
    for (std::size_t b = a + 1; b < observables_.size(); ++b) {
      if (observables_[a] == observables_[b]) {
        throw DomainError("duplicate observable " + observables_[a].name());
      }
    }
    max_index_ = std::max(max_index_, observables_[a].max_index());
  }
}

int ObservableSpace::index_of(const ObservableId& obs) const {
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    if (observables_[i] == obs) return static_cast<int>(i);
  }
  return -1;
}

std::string ObservableSpace::name() const {
  std::string out;
  for (const auto& o : observables_) {
    if (!out.empty()) out += ",";
    out += o.name();
  }
  return out;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("bad observable '" + std::string(text) + "': " + what);
  }

  int digits(bool single) {
    const std::size_t start = pos;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      ++pos;
      if (single) break;
    }
    if (pos == start) fail("expected an index");
    int value = 0;
    auto res = std::from_chars(text.data() + start, text.data() + pos, value);
    if (res.ec != std::errc()) fail("index out of range");
    return value;
  }

  // A single digit, or a bracketed digit run.
  int index() {
    if (peek() == '[') {
      ++pos;
      const int v = digits(false);
      if (peek() != ']') fail("missing ']'");
      ++pos;
      return v;
    }
    return digits(true);
  }
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

ObservableId parse_observable(std::string_view token) {
  token = trim(token);
  Cursor c{token};
  if (c.done()) c.fail("empty token");
  const char head = static_cast<char>(std::toupper(static_cast<unsigned char>(c.peek())));
  ++c.pos;
  if (head == 'P') {
    int j = 0;
    if (c.peek() == '[') {
      j = c.index();
    } else {
      j = c.digits(false);
    }
    if (!c.done()) c.fail("trailing characters");
    return ObservableId::projector(j);
  }
  if (head != 'X' && head != 'Y' && head != 'R') c.fail("unknown observable kind");
  const int j = c.index();
  const int k = c.index();
  try {
    if (head == 'X') {
      if (!c.done()) c.fail("trailing characters");
      return ObservableId::coher_x(j, k);
    }
    if (head == 'Y') {
      if (!c.done()) c.fail("trailing characters");
      return ObservableId::coher_y(j, k);
    }
    if (c.peek() != '@') c.fail("R needs '@<theta>'");
    ++c.pos;
    const std::string rest(token.substr(c.pos));
    std::size_t used = 0;
    double theta = 0.0;
    try {
      theta = std::stod(rest, &used);
    } catch (const std::exception&) {
      c.fail("bad angle");
    }
    if (used != rest.size()) c.fail("trailing characters after angle");
    return ObservableId::coher_r(j, k, theta);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
}

ObservableSpace parse_space(std::string_view spec) {
  std::vector<ObservableId> obs;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? spec.size() : comma;
    obs.push_back(parse_observable(spec.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return ObservableSpace(std::move(obs));
  } catch (const DomainError& e) {
    throw ParseError(std::string("bad space '") + std::string(spec) + "': " + e.what());
  }
}

}  // namespace fockcert
