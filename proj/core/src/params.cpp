#include "osg/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "osg/errors.hpp"

namespace osg {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::vector<std::string> config_errors(const PhysicalConfig& cfg) {
  std::vector<std::string> errors;
  if (!positive_finite(cfg.mass)) errors.emplace_back("mass must be > 0");
  if (!positive_finite(cfg.wavelength)) errors.emplace_back("wavelength must be > 0");
  if (!positive_finite(cfg.coupling_epsilon)) errors.emplace_back("coupling epsilon must be > 0");
  if (!positive_finite(cfg.delta_x0)) errors.emplace_back("packet width delta_x0 must be > 0");
  if (!std::isfinite(cfg.x0)) errors.emplace_back("packet center x0 must be finite");
  if (!std::isfinite(cfg.p0)) errors.emplace_back("mean momentum p0 must be finite");
  if (!std::isfinite(cfg.interaction_time) || cfg.interaction_time < 0.0)
    errors.emplace_back("interaction time must be >= 0");
  if (positive_finite(cfg.delta_x0) && positive_finite(cfg.wavelength) &&
      cfg.delta_x0 / cfg.wavelength >= 0.25) {
    std::ostringstream os;
    os << "delta_x0/wavelength = " << cfg.delta_x0 / cfg.wavelength
       << " must be < 0.25 for the linear mode-function approximation";
    errors.push_back(os.str());
  }
  return errors;
}

std::vector<std::string> config_warnings(const PhysicalConfig& cfg) {
  std::vector<std::string> warnings;
  if (positive_finite(cfg.delta_x0) && positive_finite(cfg.wavelength)) {
    const double ratio = cfg.delta_x0 / cfg.wavelength;
    if (ratio > 0.1 && ratio < 0.25) {
      std::ostringstream os;
      os << "delta_x0/wavelength = " << ratio
         << " exceeds 0.1; the linearized mode function is a poor approximation";
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

ModelParams derive_params(const PhysicalConfig& cfg) {
  if (auto errors = config_errors(cfg); !errors.empty()) {
    std::string msg = "invalid physical configuration:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ValidationError(msg);
  }
  ModelParams p;
  p.k = 2.0 * std::numbers::pi / cfg.wavelength;
  p.eta = kHbar * p.k * p.k / (cfg.mass * cfg.coupling_epsilon);
  p.accel = kHbar * p.k * cfg.coupling_epsilon / cfg.mass;
  p.xi0 = p.k * cfg.x0;
  p.q0 = cfg.p0 / (kHbar * p.k);
  p.delta_xi0 = p.k * cfg.delta_x0;
  // minimum uncertainty: dp0 = hbar / (2 dx0)
  p.delta_q0 = 1.0 / (2.0 * p.delta_xi0);
  p.tau_interaction = cfg.coupling_epsilon * cfg.interaction_time;
  return p;
}

PhysicalConfig to_physical(const ModelParams& params) {
  PhysicalConfig cfg;
  // accel / eta = epsilon^2 / k
  const double epsilon = std::sqrt(params.accel * params.k / params.eta);
  cfg.wavelength = 2.0 * std::numbers::pi / params.k;
  cfg.coupling_epsilon = epsilon;
  cfg.mass = kHbar * params.k * epsilon / params.accel;
  cfg.delta_x0 = params.delta_xi0 / params.k;
  cfg.x0 = params.xi0 / params.k;
  cfg.p0 = params.q0 * kHbar * params.k;
  cfg.interaction_time = params.tau_interaction / epsilon;
  return cfg;
}

}  // namespace osg
