#pragma once

#include <complex>
#include <span>
#include <vector>

#include "osg/params.hpp"

namespace osg {

using Complex = std::complex<double>;

/// Dressed-state branch. Plus <-> |chi+> (mu_x = +1/2), Minus <-> |chi-> (mu_x = -1/2).
enum class Branch { Plus, Minus };

/// +1 for Plus, -1 for Minus.
constexpr double branch_sign(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }

/// Point in dimensionless phase space: xi = k x, q = p / (hbar k).
struct PhaseSpacePoint {
  double xi = 0.0;
  double q = 0.0;
};

/// Centroid of branch `b` at dimensionless time `tau`.
///
/// The Plus branch feels the force -hbar k epsilon and the Minus branch the
/// opposite one, so with s = +1 / -1:
///   q(tau)  = q0 - s tau
///   xi(tau) = xi0 + eta q0 tau - s eta tau^2 / 2
/// The drift term eta q0 tau is dxi/dtau = eta q integrated at constant q0.
/// Throws ValidationError if tau < 0.
PhaseSpacePoint branch_centroid(const ModelParams& params, double tau, Branch b);

/// Momentum-space amplitude of the initial minimum-uncertainty packet,
///   phi(q, 0) = (2 pi dq0^2)^(-1/4) exp[-(q - q0)^2 / (4 dq0^2)] exp[-i (q - q0) xi0].
/// The phase places the packet at xi0 in position space and matches the
/// Fourier transform of exp[-(xi - xi0)^2 / (4 dxi0^2) + i q0 xi].
Complex initial_momentum_amplitude(const ModelParams& params, double q);

/// Momentum-space amplitude of branch `b` at time `tau`:
///   phi_s(q, tau) = phi(q + s tau, 0) exp[-i (eta/2) (q^2 tau + s q tau^2 + tau^3 / 3)]
/// This is the exact solution of i d_tau phi = [(eta/2) q^2 + s i d_q] phi,
/// including the branch-common tau^3 phase, so it can be compared with the
/// grid propagator amplitude by amplitude.
Complex branch_momentum_amplitude(const ModelParams& params, double q, double tau, Branch b);

/// 1/2 (|phi+|^2 + |phi-|^2) at each q. Throws ValidationError unless
/// `q_grid` is strictly increasing.
std::vector<double> momentum_distribution(const ModelParams& params, std::span<const double> q_grid,
                                          double tau);

/// Modulus of <phi-|phi+> for the zero-mean-momentum Gaussian:
///   exp[-(eta tau^2)^2 / (8 dxi0^2) - tau^2 / (2 dq0^2)].
double damping_envelope(const ModelParams& params, double tau);

/// <phi-(tau)|phi+(tau)> = exp(-i 2 xi0 tau) * damping_envelope(tau).
/// Only defined for q0 == 0; throws ValidationError otherwise (use the grid
/// propagator for drifting packets). Exactly 1 at tau == 0.
Complex branch_overlap(const ModelParams& params, double tau);

/// Probability of the excited state: 1/2 [1 + Re branch_overlap].
double excited_population(const ModelParams& params, double tau);

}  // namespace osg
