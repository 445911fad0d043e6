#pragma once

#include <string>
#include <vector>

namespace osg {

/// Reduced Planck constant in J·s. Fixed, not configurable.
inline constexpr double kHbar = 1.0545718e-34;

/// Experiment description in SI units.
///
/// Defaults reproduce the desk-scale setup of the reference setup:
/// m = 1e-26 kg, lambda = 1e-5 m, epsilon = 1e8 1/s, dx0 = lambda/50,
/// x0 = lambda/10, zero mean momentum, interaction time 30/epsilon.
struct PhysicalConfig {
  double mass = 1e-26;              // kg
  double wavelength = 1e-5;         // m
  double coupling_epsilon = 1e8;    // 1/s
  double delta_x0 = 1e-5 / 50.0;    // m
  double x0 = 1e-5 / 10.0;          // m
  double p0 = 0.0;                  // kg·m/s
  double interaction_time = 30e-8;  // s
};

/// Dimensionless parameters. Lengths are in units of 1/k, momenta in hbar*k,
/// times in 1/epsilon.
struct ModelParams {
  double eta = 0.0;        // hbar k^2 / (m epsilon), recoil-to-coupling ratio
  double xi0 = 0.0;        // k x0
  double q0 = 0.0;         // p0 / (hbar k)
  double delta_xi0 = 0.0;  // k dx0
  double delta_q0 = 0.0;   // dp0 / (hbar k) = 1 / (2 delta_xi0)
  double k = 0.0;          // 2 pi / lambda, 1/m
  double accel = 0.0;      // hbar k epsilon / m, m/s^2
  double tau_interaction = 0.0;  // epsilon * T
};

/// Hard invariant violations, one message per broken invariant. Empty when
/// the configuration is valid.
std::vector<std::string> config_errors(const PhysicalConfig& cfg);

/// Soft warnings (valid but questionable regime, e.g. dx0/lambda > 0.1).
std::vector<std::string> config_warnings(const PhysicalConfig& cfg);

/// Nondimensionalizes a configuration. Throws ValidationError listing every
/// broken invariant.
ModelParams derive_params(const PhysicalConfig& cfg);

/// Inverse of derive_params.
PhysicalConfig to_physical(const ModelParams& params);

/// Vacuum Rabi angular frequency of the linearized model in epsilon units,
/// Omega/epsilon = 2 m a x0 / (hbar epsilon) = 2 xi0.
inline double rabi_frequency(const ModelParams& params) { return 2.0 * params.xi0; }

}  // namespace osg
