#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "osg/params.hpp"

namespace osg {

/// Flat TOML-style `key = value` file. Blank lines and `#` comments are
/// ignored; string values may be double-quoted. Tables and arrays are not
/// supported.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in);
  static KeyValueFile load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get_string(const std::string& key) const;
  /// Throws ValidationError if the value is not a finite number.
  std::optional<double> get_double(const std::string& key) const;

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  /// Keys not in `known`, sorted.
  std::set<std::string> unknown_keys(const std::set<std::string>& known) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Keys understood by physical_config_from.
const std::set<std::string>& physical_config_keys();

/// Builds a PhysicalConfig from the recognized keys (`mass_kg`,
/// `wavelength_m`, `epsilon_per_s`, `delta_x0_over_lambda`,
/// `x0_over_lambda`, `p0_over_hbar_k`, `t_max_epsilon_units`). Missing keys
/// keep the PhysicalConfig defaults.
PhysicalConfig physical_config_from(const KeyValueFile& file);

}  // namespace osg
