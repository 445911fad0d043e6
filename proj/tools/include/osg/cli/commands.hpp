#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "osg/cli/scenario.hpp"

namespace osg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Residual bound for grid-vs-analytic comparisons with the linear potential.
inline constexpr double kOracleTolerance = 1e-6;

struct Table {
  std::vector<std::string> meta;     // written as "# " lines before the header
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> trailer;  // written as "# " lines after the rows
};

/// Fixed 12-significant-digit formatting; -0 prints as 0.
std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);

struct Check {
  std::string name;
  double value = 0.0;
  double lower = 0.0;  // pass iff lower <= value <= upper
  double upper = 0.0;
  bool passed = false;
  std::string detail;
};

struct CommandResult {
  Table table;
  std::vector<Check> checks;  // validate only
  nlohmann::json summary;
  int exit_code = kExitOk;
};

CommandResult cmd_momentum_dist(const Scenario& s);
CommandResult cmd_rabi(const Scenario& s);
CommandResult cmd_bell(const Scenario& s);
CommandResult cmd_separability(const Scenario& s);
CommandResult cmd_complementarity(const Scenario& s);
CommandResult cmd_validate(const Scenario& s);

/// Text report for validate: one line per check and a final verdict.
void write_report(std::ostream& out, const CommandResult& result);

/// First sampled tau with |c| < delta, or a negative value if none. From
/// then on |Im c| <= |c| < delta because |c| never increases.
double separation_time(const std::vector<double>& taus, const std::vector<Complex>& overlaps, double delta);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace osg::cli
