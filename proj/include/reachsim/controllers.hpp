/**
 * @file controllers.hpp
 * @brief Prosthetic elbow interfaces: task-space synergy (TS), joint-space
 *        synergy (JS) and dual-site proportional activation (EP).
 *
 * Each maps residual-limb measurements to a commanded elbow angular velocity.
 */
#pragma once

#include "reachsim/frames.hpp"
#include "reachsim/kinematics.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace reachsim {

enum class ControllerKind { TS, JS, EP };

std::string_view to_string(ControllerKind kind);
/// Throws std::invalid_argument on unknown names.
ControllerKind controller_from_string(std::string_view name);

struct SynergyParams {
  double theta = 1.0;
  double epsilon_cse = 1e-3;  ///< guard on |cos(q_s + q_e)|
  double qdot_max = 4.0;      ///< [rad/s]

  void validate() const;
};

struct ActivationSample {
  double a_flex = 0.0;
  double a_ext = 0.0;
  double threshold = 0.1;
  double gain = 2.0;  ///< [rad/s per unit activation]
};

struct ElbowCommand {
  double qdot_e = 0.0;
  double unsaturated = 0.0;  ///< value before saturation (0 when guarded)
  bool near_singular = false;
  bool saturated = false;
  bool range_clamped = false;
};

/// Elbow velocity that keeps the hand on the x_d axis: ydot_h = 0 in {D}.
/// Inputs are the {D}-frame angles and the measured shoulder velocity.
ElbowCommand ts_elbow_velocity(const ArmConfig& cfg, const PlanarJointState& st,
                               const SynergyParams& p = {});

ElbowCommand js_elbow_velocity(const SynergyParams& p, double qdot_s);

/// thresh(x) = max(0, x - threshold) / (1 - threshold)
double threshold_activation(double a, double threshold);

ElbowCommand ep_elbow_velocity(const ActivationSample& a, double qdot_max = SynergyParams{}.qdot_max);

/// Clamps a command so that one integration step of length dt keeps the
/// elbow inside [elbow_min, elbow_max]. Sets range_clamped when it bites.
ElbowCommand limit_to_range(const ArmConfig& cfg, double q_e, double dt, ElbowCommand cmd);

struct ControllerState {
  bool enabled = false;
  /// Captured direction-of-motion frame (TS only).
  std::optional<FrameSet> frame;
};

/// Flips the enable button. Enabling TS (re)captures {D} from the current
/// hand position and shoulder->elbow vector ({R} coordinates). Throws
/// DegenerateGeometry on a degenerate pose; the input state is untouched.
ControllerState toggle(const ControllerState& cs, ControllerKind kind, const Vec3& hand,
                       const Vec3& shoulder_to_elbow);

}  // namespace reachsim
