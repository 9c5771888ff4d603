/**
 * @file trajectory.hpp
 * @brief Recorded iteration data and its CSV representation.
 *
 * Samples are stored already rounded to the 9 significant digits used on
 * disk, so writing and re-reading a trajectory is lossless.
 */
#pragma once

#include "reachsim/frames.hpp"
#include "reachsim/kinematics.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace reachsim {

struct TrajectorySample {
  double t = 0.0;
  Vec3 hand = Vec3::Zero();      ///< world [m]
  PlanarJointState joint;        ///< residual shoulder and prosthetic elbow
  Vec3 trunk = Vec3::Zero();     ///< C7 marker, world [m]
  Vec3 shoulder = Vec3::Zero();  ///< acromion marker, world [m]
  bool enabled = false;
  bool singular = false;
  bool clamped = false;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;

  /// Sampling period, taken from the first two timestamps (0 if fewer).
  double dt() const;
  double duration() const { return samples.empty() ? 0.0 : samples.back().t; }
  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
};

bool operator==(const PlanarJointState& a, const PlanarJointState& b);

inline constexpr std::string_view kTrajectoryHeader =
    "t,hand_x,hand_y,hand_z,q_s,q_e,qdot_s,qdot_e,trunk_x,trunk_y,trunk_z,sh_x,sh_y,sh_z,"
    "enabled,flag_singular,flag_clamped";

/// Rounds to 9 significant digits (the on-disk precision).
double quantize(double v);
Vec3 quantize(const Vec3& v);

/// Formats with 9 significant digits, shortest form.
std::string format_number(double v);
/// Strict parse of a full field; throws std::invalid_argument.
double parse_number(std::string_view field);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
/// Throws std::runtime_error with line information on malformed input.
Trajectory read_trajectory_csv(std::istream& is);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string_view> split_csv_line(std::string_view line);

}  // namespace reachsim
