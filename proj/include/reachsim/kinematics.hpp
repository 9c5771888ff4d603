/**
 * @file kinematics.hpp
 * @brief Planar two-link model of the residual-limb + prosthesis arm.
 *
 * All angles live in the direction-of-motion plane {D}. The shoulder angle
 * q_s is measured from the x_d-axis to the upper arm and the elbow angle q_e
 * is the interior flexion from the upper-arm line; both are counterclockwise
 * positive. Radians and meters throughout.
 */
#pragma once

#include <array>
#include <numbers>

namespace reachsim {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct ArmConfig {
  double upper_len = 0.32;               ///< shoulder to elbow [m]
  double lower_len = 0.38;               ///< elbow to hand [m]
  double elbow_min = 5.0 * kDegToRad;    ///< [rad]
  double elbow_max = 140.0 * kDegToRad;  ///< [rad]

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  /// Hand distance from the shoulder for a given elbow angle.
  double reach(double q_e) const;
};

struct PlanarJointState {
  double q_s = 0.0;
  double q_e = 0.0;
  double qdot_s = 0.0;
  double qdot_e = 0.0;
};

struct PlanarHandState {
  double x = 0.0;
  double y = 0.0;
  double xdot = 0.0;
  double ydot = 0.0;
};

/// Dense row-major 2x2 Jacobian, d(x, y) / d(q_s, q_e). Units: meters.
struct Jacobian2x2 {
  std::array<double, 4> m{};

  double operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }
  double determinant() const { return m[0] * m[3] - m[1] * m[2]; }
};

/// Hand position (x, y) in {D}; velocity fields are left zero.
PlanarHandState forward_kinematics(const ArmConfig& cfg, double q_s, double q_e);

Jacobian2x2 jacobian(const ArmConfig& cfg, double q_s, double q_e);

/// Returns {xdot, ydot} = J * [qdot_s, qdot_e].
std::array<double, 2> hand_velocity(const Jacobian2x2& j, double qdot_s, double qdot_e);

/// Full hand state (position and velocity) for a joint state.
PlanarHandState hand_state(const ArmConfig& cfg, const PlanarJointState& st);

/// Shoulder angle that puts the hand on the +x_d axis for a given elbow
/// angle (elbow on the -y_d side of the reach line).
double shoulder_angle_on_axis(const ArmConfig& cfg, double q_e);

/// Elbow angle whose reach equals `distance`; throws std::domain_error when
/// the distance is outside the annulus the arm can cover.
double elbow_for_reach(const ArmConfig& cfg, double distance);

}  // namespace reachsim
