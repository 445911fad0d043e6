#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "osg/cli/commands.hpp"
#include "osg/errors.hpp"
#include "osg/version.hpp"

namespace osg::cli {

namespace {

struct Options {
  std::string config, out, json, snapshot, taus, potential, engine;
  double mass = 0, wavelength = 0, epsilon = 0, dx0 = 0, x0 = 0, p0 = 0;
  double tau_max = 0, tau_step = 0, q_min = 0, q_max = 0, sep = 0, d_tau = 0;
  std::size_t q_points = 0, n_points = 0;
};

bool given(const CLI::App& app, const char* name) { return app.count(name) > 0; }

Scenario build_scenario(const CLI::App& app, const Options& o) {
  Scenario s;
  if (given(app, "--config")) s = scenario_from(KeyValueFile::load(o.config));
  auto& c = s.config;
  // overrides are in lambda units, so rescale the lengths before touching lambda
  const double dx0_ratio = c.delta_x0 / c.wavelength;
  const double x0_ratio = c.x0 / c.wavelength;
  if (given(app, "--mass-kg")) c.mass = o.mass;
  if (given(app, "--wavelength-m")) c.wavelength = o.wavelength;
  c.delta_x0 = (given(app, "--delta-x0-over-lambda") ? o.dx0 : dx0_ratio) * c.wavelength;
  c.x0 = (given(app, "--x0-over-lambda") ? o.x0 : x0_ratio) * c.wavelength;
  if (given(app, "--p0-over-hbar-k")) c.p0 = o.p0 * kHbar * 2.0 * std::numbers::pi / c.wavelength;
  if (given(app, "--epsilon-per-s")) c.coupling_epsilon = o.epsilon;
  if (given(app, "--tau-max")) s.tau_max = o.tau_max;
  c.interaction_time = s.tau_max / c.coupling_epsilon;
  if (given(app, "--tau-step")) s.tau_step = o.tau_step;
  if (given(app, "--taus")) s.taus = parse_tau_list(o.taus);
  if (given(app, "--q-min")) s.q_grid.q_min = o.q_min;
  if (given(app, "--q-max")) s.q_grid.q_max = o.q_max;
  if (given(app, "--q-points")) s.q_grid.points = o.q_points;
  if (given(app, "--potential")) s.potential = parse_potential(o.potential);
  if (given(app, "--engine")) s.engine = parse_engine(o.engine);
  if (given(app, "--sep-threshold")) s.sep_threshold = o.sep;
  if (given(app, "--n-points")) s.n_points = o.n_points;
  if (given(app, "--d-tau")) s.d_tau = o.d_tau;
  if (given(app, "--snapshot")) s.snapshot_path = o.snapshot;
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intrinsic damping of Rabi oscillations in the optical Stern-Gerlach model", "osg-rabi"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config, "key = value scenario file")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "write CSV (or the validate report) here instead of stdout");
  app.add_option("--json", o.json, "write a JSON summary here");
  app.add_option("--mass-kg", o.mass);
  app.add_option("--wavelength-m", o.wavelength);
  app.add_option("--epsilon-per-s", o.epsilon);
  app.add_option("--delta-x0-over-lambda", o.dx0);
  app.add_option("--x0-over-lambda", o.x0);
  app.add_option("--p0-over-hbar-k", o.p0);
  app.add_option("--tau-max", o.tau_max, "end of the time axis, 1/epsilon units");
  app.add_option("--tau-step", o.tau_step, "time-axis spacing, 1/epsilon units");
  app.add_option("--taus", o.taus, "momentum-dist sample times, e.g. 0,5,10,15");
  app.add_option("--q-min", o.q_min);
  app.add_option("--q-max", o.q_max);
  app.add_option("--q-points", o.q_points);
  app.add_option("--potential", o.potential, "linear | sinusoidal | free (grid engine)");
  app.add_option("--engine", o.engine, "analytic | grid | both");
  app.add_option("--sep-threshold", o.sep, "delta for t_sep");
  app.add_option("--n-points", o.n_points, "grid points (power of two)");
  app.add_option("--d-tau", o.d_tau, "grid time step");
  app.add_option("--snapshot", o.snapshot, "write the final grid state as CSV");

  struct Command {
    std::string name;
    std::string help;
    CommandResult (*fn)(const Scenario&);
  };
  const std::vector<Command> commands = {
      {"momentum-dist", "momentum distribution at the --taus times", cmd_momentum_dist},
      {"rabi", "excited-state population, visibility and distinguishability", cmd_rabi},
      {"bell", "Horodecki M, closed form and brute force", cmd_bell},
      {"separability", "partial-transpose spectrum and t_sep", cmd_separability},
      {"complementarity", "duality identity D^2 + V^2 = 1", cmd_complementarity},
      {"validate", "grid oracle residuals and convergence checks", cmd_validate},
  };
  for (const auto& c : commands) app.add_subcommand(c.name, c.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Scenario s = build_scenario(app, o);
    const auto errors = scenario_errors(s);
    if (!errors.empty()) {
      for (const auto& e : errors) err << "error: " << e << '\n';
      return kExitUsage;
    }
    for (const auto& w : config_warnings(s.config)) err << "warning: " << w << '\n';

    for (const auto& c : commands) {
      if (!app.got_subcommand(c.name)) continue;
      const CommandResult r = c.fn(s);
      std::ofstream file;
      if (!o.out.empty()) {
        file.open(o.out);
        if (!file) throw ValidationError("cannot open output file " + o.out);
      }
      std::ostream& sink = o.out.empty() ? out : file;
      if (c.name == "validate") {
        write_report(sink, r);
      } else {
        write_csv(sink, r.table);
      }
      if (!o.json.empty()) {
        std::ofstream j(o.json);
        if (!j) throw ValidationError("cannot open JSON file " + o.json);
        nlohmann::json summary = r.summary;
        summary["exit_code"] = r.exit_code;
        j << summary.dump(2) << '\n';
      }
      return r.exit_code;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GridLeakError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace osg::cli
