#include "osg/config_file.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "osg/errors.hpp"

namespace osg {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::istream& in) {
  KeyValueFile file;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (file.values_.count(key)) {
      throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    file.values_[key] = value;
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  return parse(in);
}

std::optional<std::string> KeyValueFile::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> KeyValueFile::get_double(const std::string& key) const {
  auto s = get_string(key);
  if (!s) return std::nullopt;
  std::istringstream is(*s);
  is.imbue(std::locale::classic());
  double v = 0.0;
  is >> v;
  if (!is || !(is >> std::ws).eof() || !std::isfinite(v)) {
    throw ValidationError("config key '" + key + "': '" + *s + "' is not a finite number");
  }
  return v;
}

std::set<std::string> KeyValueFile::unknown_keys(const std::set<std::string>& known) const {
  std::set<std::string> out;
  for (const auto& [k, v] : values_) {
    if (!known.count(k)) out.insert(k);
  }
  return out;
}

const std::set<std::string>& physical_config_keys() {
  static const std::set<std::string> keys = {
      "mass_kg",        "wavelength_m",   "epsilon_per_s",       "delta_x0_over_lambda",
      "x0_over_lambda", "p0_over_hbar_k", "t_max_epsilon_units",
  };
  return keys;
}

PhysicalConfig physical_config_from(const KeyValueFile& file) {
  PhysicalConfig cfg;
  if (auto v = file.get_double("mass_kg")) cfg.mass = *v;
  if (auto v = file.get_double("wavelength_m")) cfg.wavelength = *v;
  if (auto v = file.get_double("epsilon_per_s")) cfg.coupling_epsilon = *v;

  const double dx_ratio = file.get_double("delta_x0_over_lambda").value_or(1.0 / 50.0);
  const double x0_ratio = file.get_double("x0_over_lambda").value_or(1.0 / 10.0);
  const double p0_ratio = file.get_double("p0_over_hbar_k").value_or(0.0);
  const double t_max = file.get_double("t_max_epsilon_units").value_or(30.0);

  cfg.delta_x0 = dx_ratio * cfg.wavelength;
  cfg.x0 = x0_ratio * cfg.wavelength;
  const double k = 2.0 * std::numbers::pi / cfg.wavelength;
  cfg.p0 = p0_ratio * kHbar * k;
  cfg.interaction_time = t_max / cfg.coupling_epsilon;
  return cfg;
}

}  // namespace osg
