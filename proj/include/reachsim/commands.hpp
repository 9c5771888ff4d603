/**
 * @file commands.hpp
 * @brief The reachsim subcommands as library calls returning exit codes.
 *
 * Exit codes: 0 success, 2 configuration or input error, 3 I/O error,
 * 4 at least one iteration failed (singularity, timeout or error) and
 * --keep-going was not given.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace reachsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitSimulation = 4;

struct SimulateOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  bool keep_going = false;
  std::optional<std::filesystem::path> out_dir;  ///< overrides run.out_dir
};

struct AnalyzeOptions {
  std::filesystem::path dir;
  std::optional<std::string> ab_label;
  std::optional<std::filesystem::path> colmap;
  std::optional<std::filesystem::path> config;  ///< only its [analysis] section is used
};

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int cmd_print_defaults(std::ostream& out);

}  // namespace reachsim
