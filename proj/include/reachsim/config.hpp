/**
 * @file config.hpp
 * @brief INI run configuration: arm, task, controllers, simulation, analysis.
 *
 * Angles are given in degrees in the file (keys ending in _deg) and held in
 * radians in memory. Target coordinates accept `<k>*l` (arm length) and
 * `<k>*h` (height) terms.
 */
#pragma once

#include "reachsim/report.hpp"
#include "reachsim/simulator.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace reachsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ArmConfig arm;
  TaskSpec task = TaskSpec::standard(1.8, 0.7);
  std::vector<std::string> run_targets{"Close", "Mid", "Far", "High"};
  std::vector<Modality> modalities{Modality::TS, Modality::JS, Modality::EP};
  SimParams sim;
  AnalysisParams analysis;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::filesystem::path out_dir = "reachsim_out";

  /// Throws ConfigError describing the first problem.
  void validate() const;
  /// Label of the able-bodied reference when AB is simulated.
  std::optional<std::string> ab_label() const;
};

/// Parses and validates. Throws ConfigError (with the offending key, value or
/// name in the message).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// The built-in defaults as a config file, target table as formulas.
std::string default_config_text();

/// Human-readable dump of a resolved configuration (targets in meters).
std::string describe_config(const RunConfig& cfg);

}  // namespace reachsim
