#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "osg/config_file.hpp"
#include "osg/grid.hpp"
#include "osg/params.hpp"

namespace osg::cli {

enum class Engine { Analytic, Grid, Both };

std::string to_string(Engine e);
/// "analytic", "grid" or "both". Throws ValidationError otherwise.
Engine parse_engine(const std::string& name);

struct MomentumGrid {
  double q_min = -50.0;
  double q_max = 50.0;
  std::size_t points = 1001;

  std::vector<double> values() const;
};

struct Scenario {
  PhysicalConfig config;
  double tau_max = 30.0;
  double tau_step = 0.01;
  MomentumGrid q_grid;
  PotentialKind potential = PotentialKind::Linear;
  Engine engine = Engine::Analytic;
  double sep_threshold = 1e-3;
  std::vector<double> taus = {0.0, 5.0, 10.0, 15.0};  // momentum-dist columns

  // grid overrides; unset fields keep default_grid values
  std::optional<std::size_t> n_points;
  std::optional<double> d_tau;
  std::optional<std::string> snapshot_path;
};

/// Config-file keys: the physical keys plus tau_step, q_min, q_max, q_points,
/// taus, potential, engine, sep_threshold, n_points, d_tau.
const std::set<std::string>& scenario_keys();

/// tau_max is taken from t_max_epsilon_units (epsilon * interaction time).
/// Throws ValidationError on unknown keys or malformed values.
Scenario scenario_from(const KeyValueFile& file);

/// Empty when valid.
std::vector<std::string> scenario_errors(const Scenario& s);

GridSpec grid_for(const Scenario& s, const ModelParams& params);

/// tau_i = i * tau_step for i = 0..floor(tau_max / tau_step).
std::vector<double> time_axis(const Scenario& s);

/// Parses "0,5,10,15".
std::vector<double> parse_tau_list(const std::string& text);

}  // namespace osg::cli
