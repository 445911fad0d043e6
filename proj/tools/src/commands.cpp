#include "osg/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <span>

#include "osg/analytic.hpp"
#include "osg/complementarity.hpp"
#include "osg/entanglement.hpp"
#include "osg/errors.hpp"
#include "osg/grid.hpp"
#include "osg/version.hpp"

namespace osg::cli {

using nlohmann::json;

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s = buf;
  if (s == "-0") return "0";
  return s;
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& m : table.meta) out << "# " << m << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  for (const auto& m : table.trailer) out << "# " << m << '\n';
}

double separation_time(const std::vector<double>& taus, const std::vector<Complex>& overlaps, double delta) {
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (std::abs(overlaps[i]) < delta) return taus[i];
  }
  return -1.0;
}

namespace {

// Linearization error |c_sin - c_lin| at tau = 10 for the default
// configuration, measured on the default grid and pinned here.
constexpr double kLinearizationMeasured = 0.0989141586552268;
constexpr double kLinearizationRegressionBound = 0.0990;
constexpr double kTemporalErrorBound = 1e-11;
constexpr double kNormDriftBound = 1e-10;
constexpr double kDualityBound = 1e-12;
constexpr double kPipelineBound = 1e-10;

std::string kv(const std::string& key, double v) { return key + "=" + format_number(v); }

std::vector<std::string> header_meta(const Scenario& s, const ModelParams& p, const std::string& command,
                                     bool uses_grid) {
  const auto& c = s.config;
  std::vector<std::string> m = {
      std::string("osg-rabi ") + std::string(kVersion),
      "command=" + command,
      kv("mass_kg", c.mass),
      kv("wavelength_m", c.wavelength),
      kv("epsilon_per_s", c.coupling_epsilon),
      kv("delta_x0_over_lambda", c.delta_x0 / c.wavelength),
      kv("x0_over_lambda", c.x0 / c.wavelength),
      kv("p0_over_hbar_k", p.q0),
      kv("t_max_epsilon_units", s.tau_max),
      kv("eta", p.eta),
      kv("xi0", p.xi0),
      kv("delta_xi0", p.delta_xi0),
      kv("delta_q0", p.delta_q0),
      kv("rabi_frequency", rabi_frequency(p)),
      "potential=" + to_string(s.potential),
      "engine=" + to_string(s.engine),
      kv("tau_step", s.tau_step),
      "time_unit=1/epsilon",
  };
  if (uses_grid) {
    const auto g = grid_for(s, p);
    m.push_back(kv("grid_n_points", static_cast<double>(g.n_points)));
    m.push_back(kv("grid_xi_min", g.xi_min));
    m.push_back(kv("grid_xi_max", g.xi_max));
    m.push_back(kv("grid_d_tau", g.d_tau));
  }
  return m;
}

json parameters_json(const Scenario& s, const ModelParams& p) {
  const auto& c = s.config;
  return json{{"mass_kg", c.mass},
              {"wavelength_m", c.wavelength},
              {"epsilon_per_s", c.coupling_epsilon},
              {"delta_x0_over_lambda", c.delta_x0 / c.wavelength},
              {"x0_over_lambda", c.x0 / c.wavelength},
              {"p0_over_hbar_k", p.q0},
              {"t_max_epsilon_units", s.tau_max},
              {"tau_step", s.tau_step},
              {"eta", p.eta},
              {"xi0", p.xi0},
              {"delta_xi0", p.delta_xi0},
              {"delta_q0", p.delta_q0},
              {"potential", to_string(s.potential)},
              {"engine", to_string(s.engine)}};
}

CommandResult start(const Scenario& s, const ModelParams& p, const std::string& command) {
  CommandResult r;
  r.table.meta = header_meta(s, p, command, s.engine != Engine::Analytic);
  r.summary = json{{"command", command}, {"version", std::string(kVersion)}, {"parameters", parameters_json(s, p)}};
  return r;
}

// Propagates one state through ascending sample times, calling `sample` after
// each. Writes the final state to the snapshot path when one is configured.
void run_grid(const Scenario& s, const ModelParams& p, PotentialKind kind, std::span<const double> taus,
              const std::function<void(std::size_t, const BranchGridState&)>& sample) {
  const GridSpec spec = grid_for(s, p);
  const Propagator prop(p, spec, kind);
  auto state = init_gaussian(p, spec);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    prop.evolve_to(state, taus[i]);
    sample(i, state);
  }
  if (s.snapshot_path) {
    std::ofstream f(*s.snapshot_path);
    if (!f) throw ValidationError("cannot open snapshot file " + *s.snapshot_path);
    write_snapshot_csv(f, state);
  }
}

struct OverlapSeries {
  std::vector<double> taus;
  std::vector<Complex> primary;  // analytic unless engine == Grid
  std::vector<Complex> grid;     // filled for Grid and Both
  double max_residual = 0.0;     // Both only, per component
};

OverlapSeries overlap_series(const Scenario& s, const ModelParams& p) {
  OverlapSeries o;
  o.taus = time_axis(s);
  const std::size_t n = o.taus.size();
  if (s.engine != Engine::Grid) {
    o.primary.resize(n);
    for (std::size_t i = 0; i < n; ++i) o.primary[i] = branch_overlap(p, o.taus[i]);
  }
  if (s.engine != Engine::Analytic) {
    o.grid.resize(n);
    run_grid(s, p, s.potential, o.taus, [&](std::size_t i, const BranchGridState& st) { o.grid[i] = overlap(st); });
  }
  if (s.engine == Engine::Grid) o.primary = o.grid;
  if (s.engine == Engine::Both) {
    for (std::size_t i = 0; i < n; ++i) {
      const Complex d = o.primary[i] - o.grid[i];
      o.max_residual = std::max({o.max_residual, std::abs(d.real()), std::abs(d.imag())});
    }
  }
  return o;
}

// Records the analytic-vs-grid residual; it is a pass/fail gate only for the
// linear potential, where the two engines solve the same problem.
void gate_residual(const Scenario& s, const OverlapSeries& o, CommandResult& r) {
  if (s.engine != Engine::Both) return;
  r.table.trailer.push_back(kv("max_abs_analytic_minus_grid", o.max_residual));
  r.summary["results"]["max_abs_analytic_minus_grid"] = o.max_residual;
  if (s.potential == PotentialKind::Linear && !(o.max_residual < kOracleTolerance)) {
    r.exit_code = kExitValidationFailure;
  }
}

Check make_check(std::string name, double value, double lower, double upper, std::string detail) {
  Check c{std::move(name), value, lower, upper, false, std::move(detail)};
  c.passed = std::isfinite(value) && value >= lower && value <= upper;
  return c;
}

bool is_default_configuration(const Scenario& s) {
  const PhysicalConfig d;
  const auto& c = s.config;
  return c.mass == d.mass && c.wavelength == d.wavelength && c.coupling_epsilon == d.coupling_epsilon &&
         std::abs(c.delta_x0 / c.wavelength - d.delta_x0 / d.wavelength) < 1e-15 &&
         std::abs(c.x0 / c.wavelength - d.x0 / d.wavelength) < 1e-15 && c.p0 == 0.0;
}

Complex overlap_at(const ModelParams& p, GridSpec spec, PotentialKind kind, double tau) {
  const Propagator prop(p, spec, kind);
  auto state = init_gaussian(p, spec);
  prop.evolve_to(state, tau);
  return overlap(state);
}

}  // namespace

CommandResult cmd_momentum_dist(const Scenario& s) {
  const ModelParams p = derive_params(s.config);
  CommandResult r = start(s, p, "momentum-dist");
  const auto q = s.q_grid.values();
  const std::size_t nt = s.taus.size();

  std::vector<std::vector<double>> analytic, grid;
  if (s.engine != Engine::Grid) {
    for (double tau : s.taus) analytic.push_back(momentum_distribution(p, q, tau));
  }
  if (s.engine != Engine::Analytic) {
    std::vector<double> order = s.taus;
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    std::vector<std::vector<double>> by_time(order.size(), std::vector<double>(q.size()));
    run_grid(s, p, s.potential, order, [&](std::size_t i, const BranchGridState& st) {
      for (std::size_t j = 0; j < q.size(); ++j) {
        by_time[i][j] = 0.5 * (std::norm(momentum_amplitude_at(st, Branch::Plus, q[j])) +
                               std::norm(momentum_amplitude_at(st, Branch::Minus, q[j])));
      }
    });
    for (double tau : s.taus) {
      const auto it = std::lower_bound(order.begin(), order.end(), tau);
      grid.push_back(by_time[static_cast<std::size_t>(it - order.begin())]);
    }
  }

  r.table.columns.push_back("q");
  auto add_block = [&](const std::vector<std::vector<double>>& cols, const std::string& prefix) {
    for (std::size_t k = 0; k < nt; ++k) {
      const std::string name = prefix + "rho_tau" + format_number(s.taus[k]);
      r.table.columns.push_back(name);
      double norm = 0.0;
      for (std::size_t j = 1; j < q.size(); ++j) norm += 0.5 * (cols[k][j] + cols[k][j - 1]) * (q[j] - q[j - 1]);
      r.table.meta.push_back(kv("norm_" + name, norm));
      r.summary["results"]["norm_" + name] = norm;
    }
  };
  if (!analytic.empty()) add_block(analytic, "");
  if (!grid.empty()) add_block(grid, s.engine == Engine::Both ? "grid_" : "");

  r.table.rows.resize(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    auto& row = r.table.rows[j];
    row.push_back(q[j]);
    for (const auto& col : analytic) row.push_back(col[j]);
    for (const auto& col : grid) row.push_back(col[j]);
  }

  if (s.engine == Engine::Both) {
    double worst = 0.0;
    for (std::size_t k = 0; k < nt; ++k)
      for (std::size_t j = 0; j < q.size(); ++j) worst = std::max(worst, std::abs(analytic[k][j] - grid[k][j]));
    r.table.trailer.push_back(kv("max_abs_analytic_minus_grid", worst));
    r.summary["results"]["max_abs_analytic_minus_grid"] = worst;
    if (s.potential == PotentialKind::Linear && !(worst < kOracleTolerance)) r.exit_code = kExitValidationFailure;
  }
  return r;
}

CommandResult cmd_rabi(const Scenario& s) {
  const ModelParams p = derive_params(s.config);
  CommandResult r = start(s, p, "rabi");
  const auto o = overlap_series(s, p);
  r.table.columns = {"tau", "P_e", "visibility", "distinguishability", "duality_residual"};
  if (s.engine == Engine::Both) r.table.columns.push_back("grid_P_e");
  double worst_duality = 0.0;
  for (std::size_t i = 0; i < o.taus.size(); ++i) {
    const Complex c = o.primary[i];
    const auto vd = duality_pair(c);
    const double res = duality_identity_residual(c);
    worst_duality = std::max(worst_duality, std::abs(res));
    std::vector<double> row = {o.taus[i], 0.5 * (1.0 + c.real()), vd.visibility, vd.distinguishability, res};
    if (s.engine == Engine::Both) row.push_back(0.5 * (1.0 + o.grid[i].real()));
    r.table.rows.push_back(std::move(row));
  }
  r.summary["results"]["max_abs_duality_residual"] = worst_duality;
  r.summary["results"]["final_P_e"] = r.table.rows.back()[1];
  gate_residual(s, o, r);
  return r;
}

CommandResult cmd_bell(const Scenario& s) {
  const ModelParams p = derive_params(s.config);
  CommandResult r = start(s, p, "bell");
  const auto o = overlap_series(s, p);
  r.table.columns = {"tau", "Im_overlap", "M_closed_form", "M_brute_force", "violates"};
  if (s.engine == Engine::Both) r.table.columns.push_back("grid_Im_overlap");
  double max_m = -1.0, tau_at_max = 0.0, worst_diff = 0.0;
  for (std::size_t i = 0; i < o.taus.size(); ++i) {
    const Complex c = o.primary[i];
    const double closed = m_closed_form(c);
    const auto verdict = horodecki_m(reduced_density(c));
    worst_diff = std::max(worst_diff, std::abs(closed - verdict.m_value));
    if (verdict.m_value > max_m) {
      max_m = verdict.m_value;
      tau_at_max = o.taus[i];
    }
    std::vector<double> row = {o.taus[i], c.imag(), closed, verdict.m_value, verdict.violates_chsh ? 1.0 : 0.0};
    if (s.engine == Engine::Both) row.push_back(o.grid[i].imag());
    r.table.rows.push_back(std::move(row));
  }
  r.table.trailer.push_back(kv("max_M", max_m));
  r.table.trailer.push_back(kv("tau_at_max_M", tau_at_max));
  r.table.trailer.push_back(kv("max_abs_closed_minus_brute", worst_diff));
  r.summary["results"]["max_M"] = max_m;
  r.summary["results"]["tau_at_max_M"] = tau_at_max;
  r.summary["results"]["max_abs_closed_minus_brute"] = worst_diff;
  if (!(worst_diff < kPipelineBound)) r.exit_code = kExitValidationFailure;
  gate_residual(s, o, r);
  return r;
}

CommandResult cmd_separability(const Scenario& s) {
  const ModelParams p = derive_params(s.config);
  CommandResult r = start(s, p, "separability");
  r.table.meta.push_back(kv("sep_threshold", s.sep_threshold));
  const auto o = overlap_series(s, p);
  r.table.columns = {"tau", "min_pt_eigenvalue", "separable_at_threshold"};
  double worst_identity = 0.0;
  for (std::size_t i = 0; i < o.taus.size(); ++i) {
    const Complex c = o.primary[i];
    const auto verdict = separability_test(reduced_density(c));
    worst_identity = std::max(worst_identity, std::abs(verdict.min_pt_eigenvalue + 0.5 * std::abs(c.imag())));
    const bool below = std::abs(c.imag()) < s.sep_threshold;
    r.table.rows.push_back({o.taus[i], verdict.min_pt_eigenvalue, below ? 1.0 : 0.0});
  }
  const double t_sep = separation_time(o.taus, o.primary, s.sep_threshold);
  r.table.trailer.push_back(kv("max_abs_min_eig_plus_half_abs_im_c", worst_identity));
  r.table.trailer.push_back(t_sep >= 0.0 ? kv("t_sep", t_sep) : std::string("t_sep=none"));
  r.summary["results"]["t_sep"] = t_sep >= 0.0 ? json(t_sep) : json(nullptr);
  r.summary["results"]["max_abs_min_eig_plus_half_abs_im_c"] = worst_identity;
  if (!(worst_identity < kPipelineBound)) r.exit_code = kExitValidationFailure;
  gate_residual(s, o, r);
  return r;
}

CommandResult cmd_complementarity(const Scenario& s) {
  const ModelParams p = derive_params(s.config);
  CommandResult r = start(s, p, "complementarity");
  const auto o = overlap_series(s, p);
  r.table.columns = {"tau", "overlap_modulus", "visibility", "distinguishability", "duality_residual"};
  double worst = 0.0;
  for (std::size_t i = 0; i < o.taus.size(); ++i) {
    const Complex c = o.primary[i];
    const auto vd = duality_pair(c);
    const double res = duality_identity_residual(c);
    worst = std::max(worst, std::abs(res));
    r.table.rows.push_back({o.taus[i], std::abs(c), vd.visibility, vd.distinguishability, res});
  }
  r.table.trailer.push_back(kv("max_abs_duality_residual", worst));
  r.summary["results"]["max_abs_duality_residual"] = worst;
  if (!(worst < kDualityBound)) r.exit_code = kExitValidationFailure;
  gate_residual(s, o, r);
  return r;
}

CommandResult cmd_validate(const Scenario& scenario) {
  Scenario s = scenario;
  s.engine = Engine::Both;
  const ModelParams p = derive_params(s.config);
  CommandResult r = start(s, p, "validate");
  const GridSpec spec = grid_for(s, p);
  const double inf = std::numeric_limits<double>::infinity();

  // Grid work fans out; results are assembled in a fixed order below.
  auto linear = std::async(std::launch::async, [&] {
    const std::vector<double> taus = {1.0, 2.5, 5.0, 10.0};
    const Propagator prop(p, spec, PotentialKind::Linear);
    auto state = init_gaussian(p, spec);
    double worst = 0.0;
    for (double tau : taus) {
      prop.evolve_to(state, tau);
      const Complex d = overlap(state) - branch_overlap(p, tau);
      worst = std::max({worst, std::abs(d.real()), std::abs(d.imag())});
    }
    return std::pair{worst, overlap(state)};
  });
  auto sin_coarse = std::async(std::launch::async, [&] { return overlap_at(p, spec, PotentialKind::Sinusoidal, 10.0); });
  auto sin_fine = std::async(std::launch::async, [&] {
    GridSpec half = spec;
    half.d_tau = spec.d_tau / 2.0;
    return overlap_at(p, half, PotentialKind::Sinusoidal, 10.0);
  });
  auto ratio = std::async(std::launch::async, [&] {
    auto at = [&](double dt) {
      GridSpec g = spec;
      g.d_tau = dt;
      return overlap_at(p, g, PotentialKind::Sinusoidal, 10.0);
    };
    const Complex ref = at(0.1 / 8.0);
    return std::abs(at(0.1) - ref) / std::abs(at(0.05) - ref);
  });
  auto drift = std::async(std::launch::async, [&] {
    auto state = init_gaussian(p, spec);
    Propagator(p, spec, s.potential).advance(state, 10000);
    return std::max(std::abs(branch_norm(state, Branch::Plus) - 1.0), std::abs(branch_norm(state, Branch::Minus) - 1.0));
  });

  const auto taus = time_axis(s);
  double duality = 0.0, pipeline = 0.0, ppt = 0.0;
  for (double tau : taus) {
    const Complex c = branch_overlap(p, tau);
    duality = std::max(duality, std::abs(duality_identity_residual(c)));
    const auto rho = reduced_density(c);
    pipeline = std::max(pipeline, std::abs(horodecki_m(rho).m_value - m_closed_form(c)));
    ppt = std::max(ppt, std::abs(separability_test(rho).min_pt_eigenvalue + 0.5 * std::abs(c.imag())));
  }

  const auto [oracle_residual, c_lin] = linear.get();
  const Complex c_coarse = sin_coarse.get();
  const Complex c_fine = sin_fine.get();
  const double richardson = std::abs(c_coarse - c_fine) * 4.0 / 3.0;
  const double lin_error = std::abs(c_coarse - c_lin);
  const bool pinned = is_default_configuration(s) && s.n_points.value_or(4096) == 4096;

  auto& checks = r.checks;
  checks.push_back(make_check("oracle_overlap_residual", oracle_residual, 0.0, kOracleTolerance,
                              "linear potential, max |analytic - grid| per component at tau in {1, 2.5, 5, 10}"));
  checks.push_back(make_check("temporal_error_estimate", richardson, 0.0, kTemporalErrorBound,
                              "sinusoidal overlap at tau = 10, Richardson estimate from d_tau and d_tau/2; "
                              "decrease --d-tau if this fails"));
  checks.push_back(make_check("strang_convergence_ratio", ratio.get(), 3.5, 4.5,
                              "sinusoidal overlap error ratio for d_tau 0.1 -> 0.05 against d_tau 0.0125"));
  checks.push_back(make_check("norm_drift", drift.get(), 0.0, kNormDriftBound, "10^4 steps, max over branches"));
  checks.push_back(make_check("duality_residual", duality, 0.0, kDualityBound, "max |D^2 + V^2 - 1| over the time axis"));
  checks.push_back(make_check("bell_pipeline_difference", pipeline, 0.0, kPipelineBound,
                              "max |M_brute_force - (1 + Im(c)^2)| over the time axis"));
  checks.push_back(make_check("ppt_identity", ppt, 0.0, kPipelineBound,
                              "max |min PT eigenvalue + |Im c|/2| over the time axis"));
  checks.push_back(make_check("linearization_error", lin_error, 0.0, pinned ? kLinearizationRegressionBound : inf,
                              pinned ? "|c_sin - c_lin| at tau = 10 against the frozen regression bound (measured " +
                                           format_number(kLinearizationMeasured) + ")"
                                     : "|c_sin - c_lin| at tau = 10; no frozen bound for these parameters"));

  bool all = true;
  json arr = json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    arr.push_back(json{{"name", c.name},
                       {"value", c.value},
                       {"lower", c.lower},
                       {"upper", std::isfinite(c.upper) ? json(c.upper) : json(nullptr)},
                       {"passed", c.passed},
                       {"detail", c.detail}});
  }
  r.summary["results"]["checks"] = arr;
  r.summary["results"]["passed"] = all;
  if (!all) r.exit_code = kExitValidationFailure;
  return r;
}

void write_report(std::ostream& out, const CommandResult& result) {
  for (const auto& m : result.table.meta) out << "# " << m << '\n';
  for (const auto& c : result.checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-26s %-20s [%s, %s]  %s", c.name.c_str(), format_number(c.value).c_str(),
                  format_number(c.lower).c_str(), std::isfinite(c.upper) ? format_number(c.upper).c_str() : "inf",
                  c.passed ? "PASS" : "FAIL");
    out << line << "  (" << c.detail << ")\n";
  }
  out << "validate: " << (result.exit_code == kExitOk ? "PASS" : "FAIL") << '\n';
}

}  // namespace osg::cli
