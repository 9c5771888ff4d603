/**
 * @file simulator.hpp
 * @brief Scripted pick-and-place reaching iterations with a prosthetic elbow
 *        in the loop.
 *
 * World frame: x forward, y up, z lateral, origin at the subject's initial
 * standing position. The shoulder starts where the Start object is reached
 * with the upper arm hanging down and the elbow at 90 degrees. The trunk is a
 * forward translation of the shoulder and C7 markers.
 */
#pragma once

#include "reachsim/controllers.hpp"
#include "reachsim/motion_script.hpp"
#include "reachsim/trajectory.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reachsim {

/// Interface driving the elbow during an iteration. AB is the able-bodied
/// reference: the natural elbow follows the script and no controller runs.
enum class Modality { AB, TS, JS, EP };

std::string_view to_string(Modality m);
/// Throws std::invalid_argument on unknown names.
Modality modality_from_string(std::string_view name);
std::optional<ControllerKind> controller_of(Modality m);

/// Object position expressed as a fraction of arm length (x), of subject
/// height (y) and an absolute lateral offset (z).
struct TargetFormula {
  std::string_view name;
  double x_arm_fraction;
  double y_height_fraction;
  double z;
};

inline constexpr TargetFormula kTargetTable[] = {
    {"Start", 0.5, 0.5, 0.0},    {"Close", 0.75, 0.65, 0.12}, {"Mid", 1.0, 0.65, -0.12},
    {"Far", 1.5, 0.65, 0.0},     {"High", 1.0, 0.9, 0.0},
};

struct NamedTarget {
  std::string name;
  Vec3 position = Vec3::Zero();
};

class UnknownTarget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TaskSpec {
  double height = 1.8;      ///< h [m]
  double arm_length = 0.7;  ///< l [m]
  std::vector<NamedTarget> targets;
  int iterations = 10;

  /// Start plus the four targets placed for a subject of height h and arm length l.
  static TaskSpec standard(double height, double arm_length, int iterations = 10);

  void validate() const;
  /// Throws UnknownTarget naming the target.
  const Vec3& target(std::string_view name) const;
  bool has_target(std::string_view name) const;
  /// Names of all targets except Start, in table order.
  std::vector<std::string> reach_targets() const;
};

struct ScriptParams {
  double ab_duration = 1.2;
  double ts_aim_duration = 0.8;
  double ts_reach_duration = 1.2;
  double ts_shoulder_offset = 0.0;  ///< added to the planned TS shoulder excursion [rad]
  double js_duration = 1.6;
  double js_enable_time = 0.0;  ///< relative to reach onset
  double ep_shoulder_duration = 1.0;
  double ep_elbow_duration = 1.5;
  /// Most extended elbow the scripted user plans for; the trunk covers the rest.
  double final_elbow_min = 20.0 * kDegToRad;
  double correction_duration = 0.6;  ///< corrective submovement after stopping short
};

/// Corrective submovements allowed per iteration.
inline constexpr int kMaxCorrections = 3;

struct SimParams {
  double rate_hz = 90.0;
  double timeout = 10.0;      ///< [s]
  double stop_speed = 0.01;   ///< [m/s]
  double stop_radius = 0.04;  ///< [m]
  double jitter_sigma = 0.02;
  SynergyParams synergy;
  ActivationSample activation;  ///< threshold and gain; activations are scripted
  ScriptParams script;

  double dt() const { return 1.0 / rate_hz; }
  void validate() const;
};

/// Initial body configuration shared by every script.
struct StartPose {
  Vec3 shoulder;
  Vec3 c7;
  Mat3 plane;  ///< arm plane axes (columns) in world coordinates
  double q_s = 0.0;
  double q_e = 0.0;
};

StartPose start_pose(const TaskSpec& spec, const ArmConfig& arm);

/// Marker offset of C7 from the shoulder joint centre [m].
inline const Vec3 kC7Offset{-0.06, 0.05, -0.18};

/// Scripted user strategy for reaching `target` with the given interface.
/// Throws std::domain_error when the target cannot be reached.
MotionScript default_script(const TaskSpec& spec, const ArmConfig& arm, const SimParams& params,
                            std::string_view target, Modality modality);

struct IterationFlags {
  bool singularity_hit = false;
  bool range_clamped = false;
  bool timeout = false;
};

struct IterationResult {
  Trajectory trajectory;
  double t_f = 0.0;
  double terminal_error = 0.0;
  std::string target;
  Vec3 target_pos = Vec3::Zero();
  Modality modality = Modality::TS;
  /// Modality label; free-form for ingested recordings.
  std::string label;
  int iteration = 0;
  std::uint64_t seed = 0;
  IterationFlags flags;
  /// Largest out-of-plane fraction of the upper arm seen in {D} while TS ran.
  double max_out_of_plane = 0.0;
  int corrections = 0;
  std::optional<std::string> error;

  bool failed() const { return error.has_value() || flags.singularity_hit || flags.timeout; }
};

/// Runs one iteration. The script is jittered with params.jitter_sigma and
/// `seed` before execution. Throws DegenerateGeometry from a TS enable.
IterationResult run_iteration(const TaskSpec& spec, const ArmConfig& arm, const SimParams& params,
                              std::string_view target, Modality modality, const MotionScript& script,
                              std::uint64_t seed);

/// Seed of one iteration; independent of execution order.
std::uint64_t iteration_seed(std::uint64_t base_seed, Modality modality, std::string_view target,
                             int iteration);

struct BatchOptions {
  std::vector<Modality> modalities{Modality::TS, Modality::JS, Modality::EP};
  std::vector<std::string> targets;  ///< empty: every reach target of the task
  std::uint64_t base_seed = 0;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Runs every (modality, target, iteration) cell, writes one trajectory CSV
/// per iteration plus manifest.json into out_dir. Results are ordered by
/// modality, target, iteration. Iteration exceptions are captured in
/// IterationResult::error; I/O failures throw with the offending path.
std::vector<IterationResult> run_batch(const TaskSpec& spec, const ArmConfig& arm, const SimParams& params,
                                       const BatchOptions& options, const std::filesystem::path& out_dir);

/// Relative path of an iteration's trajectory inside a batch directory.
std::string trajectory_file_name(Modality modality, std::string_view target, int iteration);

}  // namespace reachsim
