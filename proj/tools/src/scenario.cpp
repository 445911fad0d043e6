#include "osg/cli/scenario.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "osg/errors.hpp"

namespace osg::cli {

std::string to_string(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::Grid: return "grid";
    case Engine::Both: return "both";
  }
  return "analytic";
}

Engine parse_engine(const std::string& name) {
  if (name == "analytic") return Engine::Analytic;
  if (name == "grid") return Engine::Grid;
  if (name == "both") return Engine::Both;
  throw ValidationError("unknown engine '" + name + "' (expected analytic, grid or both)");
}

std::vector<double> MomentumGrid::values() const {
  std::vector<double> q(points);
  if (points == 1) {
    q[0] = q_min;
    return q;
  }
  for (std::size_t i = 0; i < points; ++i) {
    q[i] = q_min + (q_max - q_min) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return q;
}

const std::set<std::string>& scenario_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = physical_config_keys();
    k.insert({"tau_step", "q_min", "q_max", "q_points", "taus", "potential", "engine", "sep_threshold",
              "n_points", "d_tau"});
    return k;
  }();
  return keys;
}

namespace {

std::size_t to_count(const std::string& key, double v) {
  if (v < 0.0 || v != std::floor(v) || v > 1e9) throw ValidationError(key + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<double> parse_tau_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    std::string item = text.substr(start, end - start);
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    item = first == std::string::npos ? "" : item.substr(first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() || !std::isfinite(v)) {
      throw ValidationError("bad tau list '" + text + "'");
    }
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

Scenario scenario_from(const KeyValueFile& file) {
  const auto unknown = file.unknown_keys(scenario_keys());
  if (!unknown.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ValidationError(msg);
  }
  Scenario s;
  s.config = physical_config_from(file);
  s.tau_max = s.config.coupling_epsilon * s.config.interaction_time;
  if (auto v = file.get_double("tau_step")) s.tau_step = *v;
  if (auto v = file.get_double("q_min")) s.q_grid.q_min = *v;
  if (auto v = file.get_double("q_max")) s.q_grid.q_max = *v;
  if (auto v = file.get_double("q_points")) s.q_grid.points = to_count("q_points", *v);
  if (auto v = file.get_string("taus")) s.taus = parse_tau_list(*v);
  if (auto v = file.get_string("potential")) s.potential = parse_potential(*v);
  if (auto v = file.get_string("engine")) s.engine = parse_engine(*v);
  if (auto v = file.get_double("sep_threshold")) s.sep_threshold = *v;
  if (auto v = file.get_double("n_points")) s.n_points = to_count("n_points", *v);
  if (auto v = file.get_double("d_tau")) s.d_tau = *v;
  return s;
}

std::vector<std::string> scenario_errors(const Scenario& s) {
  std::vector<std::string> errs = config_errors(s.config);
  if (!(s.tau_step > 0.0) || !std::isfinite(s.tau_step)) errs.push_back("tau_step must be > 0");
  if (!(s.tau_max >= 0.0) || !std::isfinite(s.tau_max)) errs.push_back("tau_max must be >= 0");
  if (!(s.sep_threshold > 0.0 && s.sep_threshold < 1.0)) errs.push_back("sep_threshold must lie in (0, 1)");
  if (s.q_grid.points < 2) errs.push_back("q_points must be >= 2");
  if (!(s.q_grid.q_max > s.q_grid.q_min)) errs.push_back("q_max must exceed q_min");
  if (s.taus.empty()) errs.push_back("tau list is empty");
  for (double t : s.taus) {
    if (!(t >= 0.0)) {
      errs.push_back("tau list entries must be >= 0");
      break;
    }
  }
  if (s.engine == Engine::Analytic && s.potential != PotentialKind::Linear) {
    errs.push_back("the analytic engine only supports the linear potential; use --engine grid or both");
  }
  if (s.d_tau && !(*s.d_tau > 0.0)) errs.push_back("d_tau must be > 0");
  return errs;
}

GridSpec grid_for(const Scenario& s, const ModelParams& params) {
  GridSpec spec = default_grid(params);
  if (s.n_points) spec.n_points = *s.n_points;
  if (s.d_tau) spec.d_tau = *s.d_tau;
  return spec;
}

std::vector<double> time_axis(const Scenario& s) {
  const auto n = static_cast<std::size_t>(std::floor(s.tau_max / s.tau_step + 1e-9));
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = static_cast<double>(i) * s.tau_step;
  return t;
}

}  // namespace osg::cli
