#include "osg/analytic.hpp"

#include <cmath>
#include <numbers>

#include "osg/errors.hpp"

namespace osg {

namespace {

void require_nonnegative_time(double tau) {
  if (!(tau >= 0.0)) throw ValidationError("time tau must be >= 0");
}

}  // namespace

PhaseSpacePoint branch_centroid(const ModelParams& params, double tau, Branch b) {
  require_nonnegative_time(tau);
  const double s = branch_sign(b);
  return {params.xi0 + params.eta * params.q0 * tau - s * params.eta * tau * tau / 2.0,
          params.q0 - s * tau};
}

Complex initial_momentum_amplitude(const ModelParams& params, double q) {
  const double dq0 = params.delta_q0;
  const double u = q - params.q0;
  const double norm = std::pow(2.0 * std::numbers::pi * dq0 * dq0, -0.25);
  return norm * std::exp(-u * u / (4.0 * dq0 * dq0)) * std::polar(1.0, -u * params.xi0);
}

Complex branch_momentum_amplitude(const ModelParams& params, double q, double tau, Branch b) {
  require_nonnegative_time(tau);
  const double s = branch_sign(b);
  const double phase =
      -0.5 * params.eta * (q * q * tau + s * q * tau * tau + tau * tau * tau / 3.0);
  return initial_momentum_amplitude(params, q + s * tau) * std::polar(1.0, phase);
}

std::vector<double> momentum_distribution(const ModelParams& params, std::span<const double> q_grid,
                                          double tau) {
  require_nonnegative_time(tau);
  for (std::size_t i = 1; i < q_grid.size(); ++i) {
    if (!(q_grid[i] > q_grid[i - 1])) {
      throw ValidationError("momentum grid must be strictly increasing");
    }
  }
  std::vector<double> density;
  density.reserve(q_grid.size());
  for (double q : q_grid) {
    // the modulus is a rigid shift of the initial packet; no phase needed
    const double plus = std::norm(initial_momentum_amplitude(params, q + tau));
    const double minus = std::norm(initial_momentum_amplitude(params, q - tau));
    density.push_back(0.5 * (plus + minus));
  }
  return density;
}

double damping_envelope(const ModelParams& params, double tau) {
  require_nonnegative_time(tau);
  const double dx = params.eta * tau * tau;  // xi+ - xi- separation (abs)
  const double dp = 2.0 * tau;               // q+ - q- separation (abs)
  return std::exp(-dx * dx / (8.0 * params.delta_xi0 * params.delta_xi0) -
                  dp * dp / (8.0 * params.delta_q0 * params.delta_q0));
}

Complex branch_overlap(const ModelParams& params, double tau) {
  if (params.q0 != 0.0) {
    throw ValidationError(
        "closed-form branch overlap requires zero mean momentum (q0 = 0); "
        "use the grid propagator for drifting packets");
  }
  if (tau == 0.0) return {1.0, 0.0};
  return std::polar(damping_envelope(params, tau), -rabi_frequency(params) * tau);
}

double excited_population(const ModelParams& params, double tau) {
  return 0.5 * (1.0 + branch_overlap(params, tau).real());
}

}  // namespace osg
