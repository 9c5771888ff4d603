/**
 * @file manifest.hpp
 * @brief Batch manifest (manifest.json) listing every trajectory file with
 *        its controller, target, iteration and seed.
 */
#pragma once

#include "reachsim/simulator.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reachsim {

struct ManifestEntry {
  std::string file;        ///< relative to the batch directory
  std::string controller;  ///< modality label
  std::string target;
  int iteration = 0;
  std::uint64_t seed = 0;
  double t_f = 0.0;
  double terminal_error = 0.0;
  IterationFlags flags;
  double max_out_of_plane = 0.0;
  int corrections = 0;
  std::optional<std::string> error;
};

struct BatchManifest {
  double rate_hz = 90.0;
  double height = 0.0;
  double arm_length = 0.0;
  ArmConfig arm;
  std::map<std::string, Vec3> targets;
  std::uint64_t base_seed = 0;
  double jitter_sigma = 0.0;
  std::vector<ManifestEntry> files;
};

BatchManifest make_manifest(const TaskSpec& spec, const ArmConfig& arm, const SimParams& params,
                            std::uint64_t base_seed, const std::vector<IterationResult>& results);

std::string manifest_to_json(const BatchManifest& m);
BatchManifest manifest_from_json(const std::string& text);

void write_manifest(const std::filesystem::path& path, const BatchManifest& m);
/// Throws std::runtime_error naming the path on read or parse failure.
BatchManifest read_manifest(const std::filesystem::path& path);

}  // namespace reachsim
