#include "osg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "osg/complementarity.hpp"
#include "osg/errors.hpp"

namespace osg {

namespace {

// Plain product without the IEEE NaN recovery of operator*.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

namespace {

constexpr std::size_t kEdgeWidth = 8;

void require_valid(const GridSpec& spec) {
  if (auto errors = grid_spec_errors(spec); !errors.empty()) {
    std::string msg = "invalid grid spec:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ValidationError(msg);
  }
}

double max_edge(const std::vector<double>& density) {
  const std::size_t n = density.size();
  const std::size_t w = std::min(kEdgeWidth, n / 2);
  double m = 0.0;
  for (std::size_t i = 0; i < w; ++i) m = std::max({m, density[i], density[n - 1 - i]});
  return m;
}

std::vector<double> position_density(const std::vector<Complex>& psi) {
  std::vector<double> d(psi.size());
  std::transform(psi.begin(), psi.end(), d.begin(), [](Complex v) { return std::norm(v); });
  return d;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double potential_value(PotentialKind kind, double xi) {
  switch (kind) {
    case PotentialKind::Linear:
      return xi;
    case PotentialKind::Sinusoidal:
      return std::sin(xi);
    case PotentialKind::Free:
      return 0.0;
  }
  return 0.0;
}

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Linear:
      return "linear";
    case PotentialKind::Sinusoidal:
      return "sinusoidal";
    case PotentialKind::Free:
      return "free";
  }
  return "unknown";
}

PotentialKind parse_potential(const std::string& name) {
  if (name == "linear") return PotentialKind::Linear;
  if (name == "sinusoidal") return PotentialKind::Sinusoidal;
  if (name == "free") return PotentialKind::Free;
  throw ValidationError("unknown potential '" + name + "' (expected linear, sinusoidal or free)");
}

double GridSpec::dq() const { return 2.0 * std::numbers::pi / length(); }

GridSpec default_grid(const ModelParams& params) {
  GridSpec spec;
  spec.xi_min = params.xi0 - 60.0;
  spec.xi_max = params.xi0 + 60.0;
  return spec;
}

std::vector<std::string> grid_spec_errors(const GridSpec& spec) {
  std::vector<std::string> errors;
  if (spec.n_points < 256 || !is_power_of_two(spec.n_points)) {
    errors.push_back("n_points must be a power of two >= 256, got " + std::to_string(spec.n_points));
  }
  if (!(std::isfinite(spec.xi_min) && std::isfinite(spec.xi_max) && spec.xi_max > spec.xi_min)) {
    errors.emplace_back("xi_max must exceed xi_min");
  }
  if (!(std::isfinite(spec.d_tau) && spec.d_tau > 0.0)) errors.emplace_back("d_tau must be > 0");
  return errors;
}

BranchGridState init_profile(const GridSpec& spec, const std::function<Complex(double)>& profile) {
  require_valid(spec);
  BranchGridState state;
  state.spec = spec;
  state.psi_plus.resize(spec.n_points);
  for (std::size_t j = 0; j < spec.n_points; ++j) state.psi_plus[j] = profile(spec.xi(j));
  double norm = 0.0;
  for (const auto& v : state.psi_plus) norm += std::norm(v);
  norm *= spec.dxi();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("initial profile has zero or non-finite norm");
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& v : state.psi_plus) v *= scale;
  state.psi_minus = state.psi_plus;
  return state;
}

BranchGridState init_gaussian(const ModelParams& params, const GridSpec& spec) {
  const double width = params.delta_xi0;
  auto state = init_profile(spec, [&](double xi) {
    const double u = xi - params.xi0;
    return std::exp(-u * u / (4.0 * width * width)) * std::polar(1.0, params.q0 * xi);
  });
  const double edge = edge_density(state);
  if (edge > kInitialEdgeDensityLimit) {
    std::ostringstream os;
    os << "initial packet not contained in the grid: edge density " << edge << " > " << kInitialEdgeDensityLimit;
    throw ValidationError(os.str());
  }
  return state;
}

double branch_norm(const BranchGridState& state, Branch b) {
  double s = 0.0;
  for (const auto& v : state.branch(b)) s += std::norm(v);
  return s * state.spec.dxi();
}

Complex overlap(const BranchGridState& state) {
  Complex s{};
  for (std::size_t j = 0; j < state.psi_plus.size(); ++j) s += std::conj(state.psi_minus[j]) * state.psi_plus[j];
  return s * state.spec.dxi();
}

std::vector<Complex> momentum_amplitudes(const BranchGridState& state, Branch b) {
  const auto& spec = state.spec;
  const std::size_t n = spec.n_points;
  std::vector<Complex> buf = state.branch(b);
  for (std::size_t j = 1; j < n; j += 2) buf[j] = -buf[j];
  Fft(n).forward(buf);
  const double scale = spec.dxi() / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) buf[j] *= scale * std::polar(1.0, -spec.q(j) * spec.xi_min);
  return buf;
}

Complex momentum_amplitude_at(const BranchGridState& state, Branch b, double q) {
  const auto& spec = state.spec;
  const auto& psi = state.branch(b);
  const Complex rot = std::polar(1.0, -q * spec.dxi());
  Complex sum{};
  Complex phase{};
  for (std::size_t j = 0; j < psi.size(); ++j) {
    // re-anchor the recurrence periodically to bound rounding drift
    if (j % 256 == 0) {
      phase = std::polar(1.0, -q * spec.xi(j));
    } else {
      phase *= rot;
    }
    sum += psi[j] * phase;
  }
  return sum * (spec.dxi() / std::sqrt(2.0 * std::numbers::pi));
}

double edge_density(const BranchGridState& state) {
  double m = 0.0;
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    m = std::max(m, max_edge(position_density(state.branch(b))));
    m = std::max(m, max_edge(position_density(momentum_amplitudes(state, b))));
  }
  return m;
}

GridObservables observables(const BranchGridState& state) {
  const auto& spec = state.spec;
  const std::size_t n = spec.n_points;
  GridObservables obs;
  obs.overlap = overlap(state);
  obs.excited_population = 0.5 * (1.0 + obs.overlap.real());
  // rounding can push |c| marginally above 1 at tau = 0
  const double modulus = std::min(std::abs(obs.overlap), 1.0);
  obs.visibility = modulus;
  obs.distinguishability = std::sqrt(std::max(0.0, 1.0 - modulus * modulus));

  const auto amp_plus = momentum_amplitudes(state, Branch::Plus);
  const auto amp_minus = momentum_amplitudes(state, Branch::Minus);
  obs.q.resize(n);
  obs.momentum_density.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    obs.q[j] = spec.q(j);
    obs.momentum_density[j] = 0.5 * (std::norm(amp_plus[j]) + std::norm(amp_minus[j]));
  }

  auto centroid = [&](Branch b, const std::vector<Complex>& amp) {
    const auto& psi = state.branch(b);
    double px = 0.0, x = 0.0, pq = 0.0, q = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = std::norm(psi[j]);
      px += dx;
      x += dx * spec.xi(j);
      const double dp = std::norm(amp[j]);
      pq += dp;
      q += dp * spec.q(j);
    }
    return PhaseSpacePoint{x / px, q / pq};
  };
  obs.centroid_plus = centroid(Branch::Plus, amp_plus);
  obs.centroid_minus = centroid(Branch::Minus, amp_minus);
  return obs;
}

Propagator::Propagator(const ModelParams& params, const GridSpec& spec, PotentialKind potential)
    : params_(params), spec_((require_valid(spec), spec)), potential_(potential), fft_(spec.n_points) {
  const std::size_t n = spec_.n_points;
  q_fft_order_.resize(n);
  kinetic_.resize(n);
  half_potential_.resize(n);
  full_potential_.resize(n);
  const double dq = spec_.dq();
  for (std::size_t j = 0; j < n; ++j) {
    const double kj = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    q_fft_order_[j] = kj * dq;
    kinetic_[j] = std::polar(1.0, -0.5 * params_.eta * q_fft_order_[j] * q_fft_order_[j] * spec_.d_tau);
    const double v = potential_value(potential_, spec_.xi(j));
    half_potential_[j] = std::polar(1.0, -0.5 * v * spec_.d_tau);
    full_potential_[j] = std::polar(1.0, -v * spec_.d_tau);
  }
}

void Propagator::check_state(const BranchGridState& state) const {
  if (state.psi_plus.size() != spec_.n_points || state.psi_minus.size() != spec_.n_points) {
    throw ValidationError("state size does not match propagator grid");
  }
}

void Propagator::step(BranchGridState& state) const { advance(state, 1); }

void Propagator::advance(BranchGridState& state, std::size_t steps) const {
  check_state(state);
  if (steps == 0) return;
  const std::size_t n = spec_.n_points;
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    auto& psi = state.branch(b);
    const bool minus = b == Branch::Minus;
    auto apply = [&](const std::vector<Complex>& table) {
      if (minus) {
        for (std::size_t j = 0; j < n; ++j) psi[j] = mul(psi[j], std::conj(table[j]));
      } else {
        for (std::size_t j = 0; j < n; ++j) psi[j] = mul(psi[j], table[j]);
      }
    };
    apply(half_potential_);
    for (std::size_t s = 0; s < steps; ++s) {
      fft_.forward(psi);
      for (std::size_t j = 0; j < n; ++j) psi[j] = mul(psi[j], kinetic_[j]);
      fft_.inverse(psi);
      apply(s + 1 < steps ? full_potential_ : half_potential_);
    }
  }
  state.tau += static_cast<double>(steps) * spec_.d_tau;
}

void Propagator::step_branch(std::vector<Complex>& psi, Branch b, double dt) const {
  const std::size_t n = spec_.n_points;
  const double s = branch_sign(b);
  auto potential_half = [&] {
    for (std::size_t j = 0; j < n; ++j) psi[j] *= std::polar(1.0, -0.5 * s * potential_value(potential_, spec_.xi(j)) * dt);
  };
  potential_half();
  fft_.forward(psi);
  for (std::size_t j = 0; j < n; ++j) psi[j] *= std::polar(1.0, -0.5 * params_.eta * q_fft_order_[j] * q_fft_order_[j] * dt);
  fft_.inverse(psi);
  potential_half();
}

void Propagator::evolve_to(BranchGridState& state, double tau) const {
  check_state(state);
  const double span = tau - state.tau;
  if (span < -1e-12 * std::max(1.0, std::abs(tau))) {
    throw ValidationError("cannot propagate backwards in time");
  }
  if (span > 0.0) {
    // tolerate accumulated rounding in tau so that exact multiples of d_tau
    // do not produce a spurious tiny extra step
    const double ratio = span / spec_.d_tau;
    auto whole = static_cast<std::size_t>(std::floor(ratio + 1e-9));
    advance(state, whole);
    const double remainder = span - static_cast<double>(whole) * spec_.d_tau;
    if (remainder > 1e-9 * spec_.d_tau) {
      step_branch(state.psi_plus, Branch::Plus, remainder);
      step_branch(state.psi_minus, Branch::Minus, remainder);
    }
  }
  state.tau = tau;
  const double edge = edge_density(state);
  if (edge > kEdgeDensityLimit) {
    std::ostringstream os;
    os << "probability reached the grid edge at tau=" << tau << " (edge density " << edge
       << " > " << kEdgeDensityLimit << "); enlarge the window or n_points";
    throw GridLeakError(os.str());
  }
}

BranchGridState step(const BranchGridState& state, const ModelParams& params, PotentialKind potential) {
  BranchGridState next = state;
  Propagator(params, state.spec, potential).step(next);
  return next;
}

void write_snapshot_csv(std::ostream& out, const BranchGridState& state) {
  const auto& spec = state.spec;
  out << "# tau=" << format_double(state.tau) << "\n";
  out << "# n_points=" << spec.n_points << "\n";
  out << "# xi_min=" << format_double(spec.xi_min) << "\n";
  out << "# xi_max=" << format_double(spec.xi_max) << "\n";
  out << "# d_tau=" << format_double(spec.d_tau) << "\n";
  out << "xi,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus\n";
  char buf[160];
  for (std::size_t j = 0; j < spec.n_points; ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", spec.xi(j), state.psi_plus[j].real(),
                  state.psi_plus[j].imag(), state.psi_minus[j].real(), state.psi_minus[j].imag());
    out << buf;
  }
}

BranchGridState read_snapshot_csv(std::istream& in) {
  std::map<std::string, std::string> meta;
  std::string line;
  bool header_seen = false;
  BranchGridState state;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        auto key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(' '));
        meta[key] = line.substr(eq + 1);
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    double v[5];
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3], &v[4]) != 5) {
      throw ValidationError("snapshot csv: malformed row '" + line + "'");
    }
    state.psi_plus.emplace_back(v[1], v[2]);
    state.psi_minus.emplace_back(v[3], v[4]);
  }
  try {
    state.tau = std::stod(meta.at("tau"));
    state.spec.n_points = std::stoul(meta.at("n_points"));
    state.spec.xi_min = std::stod(meta.at("xi_min"));
    state.spec.xi_max = std::stod(meta.at("xi_max"));
    state.spec.d_tau = std::stod(meta.at("d_tau"));
  } catch (const std::exception&) {
    throw ValidationError("snapshot csv: missing or malformed metadata");
  }
  if (state.psi_plus.size() != state.spec.n_points) {
    throw ValidationError("snapshot csv: row count does not match n_points");
  }
  return state;
}

}  // namespace osg
