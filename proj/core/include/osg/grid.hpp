#pragma once

// Split-operator propagation of the two dressed-branch wavefunctions.
//
// mu_x commutes with the Hamiltonian in the one-excitation sector, so each
// branch obeys its own scalar equation (dimensionless units):
//   i d_tau psi_s = [-(eta/2) d_xi^2 + s V(xi)] psi_s,   s = +1 (Plus), -1 (Minus)
// with V(xi) = xi (Linear), sin(xi) (Sinusoidal) or 0 (Free).

#include <complex>
#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "osg/analytic.hpp"
#include "osg/fft.hpp"
#include "osg/params.hpp"

namespace osg {

enum class PotentialKind { Linear, Sinusoidal, Free };

double potential_value(PotentialKind kind, double xi);
std::string to_string(PotentialKind kind);
/// Accepts "linear", "sinusoidal", "free". Throws ValidationError otherwise.
PotentialKind parse_potential(const std::string& name);

/// Uniform periodic grid: xi_j = xi_min + j * dxi, dxi = (xi_max - xi_min) / n_points,
/// so xi_max itself is the periodic image of xi_min. The conjugate momentum
/// grid is q_j = (j - n_points/2) * dq, dq = 2 pi / (xi_max - xi_min).
struct GridSpec {
  std::size_t n_points = 4096;
  double xi_min = -60.0;
  double xi_max = 60.0;
  double d_tau = 1e-3;

  double length() const { return xi_max - xi_min; }
  double dxi() const { return length() / static_cast<double>(n_points); }
  double xi(std::size_t j) const { return xi_min + static_cast<double>(j) * dxi(); }
  double dq() const;
  double q(std::size_t j) const { return (static_cast<double>(j) - static_cast<double>(n_points / 2)) * dq(); }
};

/// n_points = 4096, xi in [xi0 - 60, xi0 + 60), d_tau = 1e-3.
GridSpec default_grid(const ModelParams& params);

/// Empty when valid: n_points >= 256 and a power of two, xi_max > xi_min, d_tau > 0.
std::vector<std::string> grid_spec_errors(const GridSpec& spec);

inline constexpr double kEdgeDensityLimit = 1e-12;
inline constexpr double kInitialEdgeDensityLimit = 1e-14;

struct BranchGridState {
  std::vector<Complex> psi_plus;
  std::vector<Complex> psi_minus;
  GridSpec spec;
  double tau = 0.0;

  std::vector<Complex>& branch(Branch b) { return b == Branch::Plus ? psi_plus : psi_minus; }
  const std::vector<Complex>& branch(Branch b) const { return b == Branch::Plus ? psi_plus : psi_minus; }
};

/// Both branches set to the normalized packet
///   psi(xi) ~ exp[-(xi - xi0)^2 / (4 dxi0^2) + i q0 xi],
/// which encodes |e,0> = (|chi+> + |chi->)/sqrt(2). Throws ValidationError if
/// the spec is invalid or the packet density at the grid edges exceeds 1e-14.
BranchGridState init_gaussian(const ModelParams& params, const GridSpec& spec);

/// Both branches set to an arbitrary profile, normalized on the grid.
BranchGridState init_profile(const GridSpec& spec, const std::function<Complex(double)>& profile);

/// Discrete integral dxi * sum |psi|^2 of one branch.
double branch_norm(const BranchGridState& state, Branch b);

/// Riemann sum <psi-|psi+> = dxi * sum conj(psi-) psi+.
Complex overlap(const BranchGridState& state);

/// Momentum amplitudes on the conjugate grid q_j, normalized so that
/// dq * sum |phi|^2 = 1 and phase-compatible with
///   phi(q) = (2 pi)^(-1/2) * integral psi(xi) exp(-i q xi) dxi.
std::vector<Complex> momentum_amplitudes(const BranchGridState& state, Branch b);

/// Same transform evaluated at an arbitrary momentum by direct summation.
Complex momentum_amplitude_at(const BranchGridState& state, Branch b, double q);

/// Largest probability density within the outermost 8 points of the position
/// window and of the momentum window, over both branches.
double edge_density(const BranchGridState& state);

struct GridObservables {
  Complex overlap;
  double excited_population = 1.0;
  double visibility = 1.0;
  double distinguishability = 0.0;
  std::vector<double> q;                 // conjugate grid, ascending
  std::vector<double> momentum_density;  // 1/2 (|phi+|^2 + |phi-|^2)
  PhaseSpacePoint centroid_plus;
  PhaseSpacePoint centroid_minus;
};

GridObservables observables(const BranchGridState& state);

/// Strang-split propagator for a fixed grid, time step and potential. The
/// phase tables and FFT plan are immutable, so one Propagator can advance
/// several independent states concurrently.
class Propagator {
 public:
  /// Throws ValidationError if the spec is invalid.
  Propagator(const ModelParams& params, const GridSpec& spec, PotentialKind potential);

  const GridSpec& spec() const { return spec_; }
  PotentialKind potential() const { return potential_; }

  /// One d_tau step: half potential phase, kinetic phase in momentum space,
  /// half potential phase.
  void step(BranchGridState& state) const;

  /// `steps` consecutive steps; adjacent half potential phases are fused.
  void advance(BranchGridState& state, std::size_t steps) const;

  /// Advances to `tau` with whole steps plus one shorter Strang step for any
  /// remainder, then checks edge_density against kEdgeDensityLimit and
  /// throws GridLeakError on leakage. Throws ValidationError if tau < state.tau.
  void evolve_to(BranchGridState& state, double tau) const;

 private:
  void step_branch(std::vector<Complex>& psi, Branch b, double dt) const;
  void check_state(const BranchGridState& state) const;

  ModelParams params_;
  GridSpec spec_;
  PotentialKind potential_;
  Fft fft_;
  std::vector<double> q_fft_order_;
  std::vector<Complex> kinetic_;         // exp(-i eta/2 q^2 d_tau), FFT order
  std::vector<Complex> half_potential_;  // exp(-i V d_tau / 2) for Plus; conj for Minus
  std::vector<Complex> full_potential_;  // exp(-i V d_tau) for Plus; conj for Minus
};

/// Convenience form of Propagator::step returning a new state.
BranchGridState step(const BranchGridState& state, const ModelParams& params, PotentialKind potential);

/// Snapshot CSV: `# key=value` metadata lines (tau, n_points, xi_min, xi_max,
/// d_tau), a header row, then xi,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus.
void write_snapshot_csv(std::ostream& out, const BranchGridState& state);
BranchGridState read_snapshot_csv(std::istream& in);

}  // namespace osg
