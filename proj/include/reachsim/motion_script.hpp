/**
 * @file motion_script.hpp
 * @brief Scripted stand-in for the human user: minimum-jerk segments on the
 *        trunk and residual-limb degrees of freedom plus enable-button events.
 */
#pragma once

#include "reachsim/frames.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace reachsim {

/// start + (end - start) * (10 tau^3 - 15 tau^4 + 6 tau^5), tau = t / duration.
/// t is clamped to [0, duration].
double min_jerk(double start, double end, double duration, double t);
double min_jerk_velocity(double start, double end, double duration, double t);

enum class Dof {
  Trunk,            ///< forward shoulder translation [m]
  Aim,              ///< rotation of the arm plane about MotionScript::aim_axis [rad]
  Shoulder,         ///< in-plane shoulder angle [rad]
  Elbow,            ///< natural elbow angle, able-bodied arm only [rad]
  ElbowActivation,  ///< elbow angle the user intends through EMG activation [rad]
};

std::string_view to_string(Dof dof);

struct Phase {
  Dof dof = Dof::Shoulder;
  double start_value = 0.0;
  double end_value = 0.0;
  double t_start = 0.0;
  double duration = 1.0;

  double t_end() const { return t_start + duration; }
};

struct MotionScript {
  std::vector<Phase> phases;
  /// Times at which the user presses the interface enable button.
  std::vector<double> toggle_times;
  Vec3 aim_axis = Vec3::UnitZ();

  /// Throws std::invalid_argument on non-positive durations or overlapping
  /// phases of one DOF.
  void validate() const;

  bool drives(Dof dof) const;
  /// Value of a DOF at time t. Before its first phase the DOF holds that
  /// phase's start value; undriven DOFs return `rest`.
  double value(Dof dof, double t, double rest) const;
  double velocity(Dof dof, double t) const;
  /// End time of the last phase.
  double duration() const;
};

/// Perturbs each phase end value by sigma * |end - start| * N(0, 1), keeping
/// chained phases of a DOF continuous. Deterministic for a given seed.
MotionScript jitter(const MotionScript& script, double sigma, std::uint64_t seed);

}  // namespace reachsim
