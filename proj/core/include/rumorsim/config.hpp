#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rumorsim/simulator.hpp"

namespace rumorsim {

/// Ordered `key = value` pairs. Blank lines and lines starting with '#' are
/// skipped.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::string_view text, const std::string& source);
KeyValues load_key_values(const std::filesystem::path& path);

/// Everything a CLI run needs: the simulation parameters plus input and
/// output locations.
struct RunConfig {
  SimulationConfig sim;
  std::filesystem::path edges_path;
  std::filesystem::path users_path;
  std::optional<std::filesystem::path> rumor_path;
  std::optional<std::filesystem::path> decisions_path;
  std::filesystem::path output_dir = ".";
  std::vector<MetricKind> metrics;  // evaluation sweep

  /// Relative paths resolve against `base_dir`. Unknown keys are a ConfigError.
  static RunConfig from_key_values(const KeyValues& kv, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  /// Echo of the effective configuration using the file's key names.
  KeyValues to_key_values() const;
};

/// Every key the config file accepts.
const std::vector<std::string>& config_keys();

std::vector<UserId> parse_id_list(std::string_view text);
std::vector<MetricKind> parse_metric_list(std::string_view text);

}  // namespace rumorsim
