#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "osg/cli/commands.hpp"
#include "osg/errors.hpp"
#include "test_support.hpp"

using namespace osg;
using namespace osg::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "osg-rabi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("osg_cli_test_" + name);
}

}  // namespace

TEST_CASE("number formatting is fixed at 12 significant digits") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1 + 0.2) == "0.3");
  CHECK(format_number(-1.0 / 3.0) == "-0.333333333333");
  CHECK(format_number(1.5e-13) == "1.5e-13");
}

TEST_CASE("scenario plumbing") {
  Scenario s;
  CHECK(scenario_errors(s).empty());
  const auto t = time_axis(s);
  CHECK(t.size() == 3001);
  CHECK(t.back() == 30.0);
  CHECK(t[250] == 2.5);

  s.tau_max = 1.0;
  s.tau_step = 0.3;
  CHECK(time_axis(s).size() == 4);

  CHECK(parse_tau_list(" 0, 2.5 ,10") == std::vector<double>{0.0, 2.5, 10.0});
  CHECK_THROWS_AS(parse_tau_list("1,,2"), ValidationError);
  CHECK_THROWS_AS(parse_tau_list("1,x"), ValidationError);

  Scenario bad;
  bad.potential = PotentialKind::Sinusoidal;
  bad.sep_threshold = 1.0;
  bad.tau_step = 0.0;
  CHECK(scenario_errors(bad).size() == 3);
  bad.engine = Engine::Grid;
  CHECK(scenario_errors(bad).size() == 2);

  CHECK(parse_engine("both") == Engine::Both);
  CHECK_THROWS_AS(parse_engine("numeric"), ValidationError);

  SUBCASE("config file") {
    std::istringstream in(
        "# desk-scale setup\n"
        "x0_over_lambda = 0\n"
        "t_max_epsilon_units = 12\n"
        "tau_step = 0.5\n"
        "taus = \"0,5\"\n"
        "engine = \"grid\"\n"
        "potential = \"sinusoidal\"\n"
        "n_points = 2048\n");
    const auto f = scenario_from(KeyValueFile::parse(in));
    CHECK(f.config.x0 == 0.0);
    CHECK(f.tau_max == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(f.tau_step == 0.5);
    CHECK(f.taus == std::vector<double>{0.0, 5.0});
    CHECK(f.engine == Engine::Grid);
    CHECK(f.potential == PotentialKind::Sinusoidal);
    CHECK(f.n_points == 2048u);
    CHECK(scenario_errors(f).empty());

    std::istringstream unknown("tau_max = 3\n");
    CHECK_THROWS_AS(scenario_from(KeyValueFile::parse(unknown)), ValidationError);
    std::istringstream fractional("q_points = 10.5\n");
    CHECK_THROWS_AS(scenario_from(KeyValueFile::parse(fractional)), ValidationError);
  }
}

TEST_CASE("separation_time") {
  const std::vector<double> taus = {0.0, 1.0, 2.0, 3.0};
  const std::vector<Complex> c = {{1.0, 0.0}, {0.0, 0.5}, {0.01, 0.0}, {0.0, 0.0}};
  CHECK(separation_time(taus, c, 0.1) == 2.0);
  CHECK(separation_time(taus, c, 1e-3) == 3.0);
  CHECK(separation_time(taus, {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}, 0.5) < 0.0);
}

TEST_CASE("rabi") {
  Scenario s;
  const auto r = cmd_rabi(s);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.table.columns == std::vector<std::string>{"tau", "P_e", "visibility", "distinguishability", "duality_residual"});
  const auto& first = r.table.rows.front();
  CHECK(first[1] == 1.0);
  CHECK(first[2] == 1.0);
  CHECK(first[3] == 0.0);
  CHECK(r.table.rows[250][1] == doctest::Approx(testing_support::frozen::population_tau2_5).epsilon(1e-12));
  CHECK(std::abs(r.table.rows.back()[1] - 0.5) < 1e-6);
  for (const auto& row : r.table.rows) CHECK(std::abs(row[4]) < 1e-12);

  SUBCASE("node-centred packet decays monotonically") {
    Scenario node;
    node.config.x0 = 0.0;
    const auto n = cmd_rabi(node);
    for (std::size_t i = 1; i < n.table.rows.size(); ++i) CHECK(n.table.rows[i][1] <= n.table.rows[i - 1][1]);
    CHECK(std::abs(n.table.rows.back()[1] - 0.5) < 1e-12);
  }
  SUBCASE("nonzero mean momentum is refused by the analytic engine") {
    Scenario moving;
    moving.config.p0 = 1e-28;
    CHECK_THROWS_AS(cmd_rabi(moving), ValidationError);
  }
}

TEST_CASE("bell") {
  Scenario s;
  const auto r = cmd_bell(s);
  CHECK(r.exit_code == kExitOk);
  const auto m = column(r.table, "M_brute_force");
  const auto v = column(r.table, "violates");
  CHECK(r.table.rows.front()[m] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.table.rows.front()[v] == 0.0);
  CHECK(std::abs(r.table.rows.back()[m] - 1.0) < 1e-8);
  CHECK(r.table.rows.back()[v] == 0.0);
  CHECK(r.summary["results"]["max_M"].get<double>() == doctest::Approx(1.90945589749).epsilon(1e-10));
  CHECK(r.summary["results"]["tau_at_max_M"].get<double>() == doctest::Approx(1.2));
  CHECK(r.summary["results"]["max_abs_closed_minus_brute"].get<double>() < 1e-10);
  CHECK(r.table.rows[125][m] == doctest::Approx(testing_support::frozen::m_tau1_25).epsilon(1e-12));
}

TEST_CASE("separability") {
  Scenario s;
  const auto r = cmd_separability(s);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.table.rows.front()[1] == 0.0);
  CHECK(std::abs(r.table.rows[250][1]) < 1e-12);  // Omega tau = pi
  CHECK(r.table.rows[100][1] < -0.1);
  CHECK(r.table.trailer.back() == "t_sep=14.79");
  CHECK(r.summary["results"]["t_sep"].get<double>() == doctest::Approx(14.79));

  s.sep_threshold = 1e-30;
  CHECK(cmd_separability(s).table.trailer.back() == "t_sep=none");
}

TEST_CASE("complementarity") {
  Scenario s;
  const auto r = cmd_complementarity(s);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.summary["results"]["max_abs_duality_residual"].get<double>() < 1e-12);
  CHECK(r.table.rows[1000][1] == doctest::Approx(testing_support::frozen::overlap_modulus_tau10).epsilon(1e-12));
}

TEST_CASE("momentum-dist") {
  Scenario s;
  const auto r = cmd_momentum_dist(s);
  CHECK(r.table.columns == std::vector<std::string>{"q", "rho_tau0", "rho_tau5", "rho_tau10", "rho_tau15"});
  CHECK(r.table.rows.size() == 1001);
  for (const char* key : {"norm_rho_tau0", "norm_rho_tau5", "norm_rho_tau10", "norm_rho_tau15"}) {
    CHECK(std::abs(r.summary["results"][key].get<double>() - 1.0) < 1e-8);
  }

  s.taus = {0.0};
  CHECK(cmd_momentum_dist(s).table.columns == std::vector<std::string>{"q", "rho_tau0"});

  SUBCASE("grid oracle columns") {
    Scenario both;
    both.engine = Engine::Both;
    both.taus = {5.0, 2.5};
    both.q_grid.points = 201;
    const auto b = cmd_momentum_dist(both);
    CHECK(b.exit_code == kExitOk);
    CHECK(b.table.columns ==
          std::vector<std::string>{"q", "rho_tau5", "rho_tau2.5", "grid_rho_tau5", "grid_rho_tau2.5"});
    CHECK(b.summary["results"]["max_abs_analytic_minus_grid"].get<double>() < 1e-6);
  }
}

TEST_CASE("run: exit codes and outputs") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"plot"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitOk);
  CHECK(invoke({"--version"}).out.find("0.1.0") != std::string::npos);
  CHECK(invoke({"rabi", "--engine", "numeric"}).code == kExitUsage);
  CHECK(invoke({"rabi", "--potential", "sinusoidal"}).code == kExitUsage);
  CHECK(invoke({"rabi", "--tau-step", "-1"}).code == kExitUsage);
  CHECK(invoke({"rabi", "--x0-over-lambda", "0.2", "--delta-x0-over-lambda", "-1"}).code == kExitUsage);

  const auto a = invoke({"rabi", "--tau-max", "5", "--tau-step", "0.25"});
  const auto b = invoke({"rabi", "--tau-max", "5", "--tau-step", "0.25"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  for (const char* key : {"# osg-rabi 0.1.0", "# mass_kg=1e-26", "# wavelength_m=1e-05", "# epsilon_per_s=100000000",
                          "# delta_x0_over_lambda=0.02", "# x0_over_lambda=0.1", "# p0_over_hbar_k=0",
                          "# t_max_epsilon_units=5", "tau,P_e,visibility,distinguishability,duality_residual\n",
                          "\n2.5,0.0895658612634,"}) {
    CHECK_MESSAGE(a.out.find(key) != std::string::npos, key);
  }

  SUBCASE("wide packets warn but run") {
    const auto w = invoke({"rabi", "--tau-max", "1", "--delta-x0-over-lambda", "0.2"});
    CHECK(w.code == kExitOk);
    CHECK(w.err.find("warning") != std::string::npos);
  }

  SUBCASE("--out, --json and --config") {
    const auto cfg = temp_file("scenario.toml");
    const auto csv = temp_file("out.csv");
    const auto js = temp_file("summary.json");
    {
      std::ofstream f(cfg);
      f << "x0_over_lambda = 0\nt_max_epsilon_units = 4\ntau_step = 1\n";
    }
    const auto r = invoke({"separability", "--config", cfg.string(), "--out", csv.string(), "--json", js.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(csv);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("# x0_over_lambda=0\n") != std::string::npos);
    CHECK(text.find("\n4,0,1\n") != std::string::npos);  // real overlap: PT spectrum stays >= 0
    std::ifstream jin(js);
    const auto summary = nlohmann::json::parse(jin);
    CHECK(summary["command"] == "separability");
    CHECK(summary["exit_code"] == 0);

    {
      std::ofstream f(cfg);
      f << "colour = \"blue\"\n";
    }
    CHECK(invoke({"rabi", "--config", cfg.string()}).code == kExitUsage);
    CHECK(invoke({"rabi", "--config", (cfg.string() + ".missing")}).code == kExitUsage);
    std::filesystem::remove(cfg);
    std::filesystem::remove(csv);
    std::filesystem::remove(js);
  }
}

TEST_CASE("run: grid leakage is a validation failure") {
  // momentum window is +-pi/dxi ~ 54; the branches arrive there near tau = 40
  const auto r = invoke({"rabi", "--engine", "grid", "--n-points", "2048", "--d-tau", "0.01", "--tau-max", "50",
                         "--tau-step", "1"});
  CHECK(r.code == kExitValidationFailure);
  CHECK(r.err.find("grid edge") != std::string::npos);
}

TEST_CASE("run: snapshot of the final grid state") {
  const auto snap = temp_file("snapshot.csv");
  const auto r = invoke({"rabi", "--engine", "grid", "--tau-max", "0.5", "--tau-step", "0.5", "--n-points", "4096",
                         "--snapshot", snap.string()});
  CHECK(r.code == kExitOk);
  std::ifstream in(snap);
  const auto state = read_snapshot_csv(in);
  CHECK(state.tau == 0.5);
  CHECK(std::abs(branch_norm(state, Branch::Plus) - 1.0) < 1e-12);
  std::filesystem::remove(snap);
}

TEST_CASE("validate: a coarse time step fails with a convergence diagnostic") {
  const auto r = invoke({"validate", "--d-tau", "0.1"});
  CHECK(r.code == kExitValidationFailure);
  CHECK(r.out.find("temporal_error_estimate") != std::string::npos);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("linearization_error") != std::string::npos);
  CHECK(r.out.find("validate: FAIL") != std::string::npos);
}
