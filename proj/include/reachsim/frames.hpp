/**
 * @file frames.hpp
 * @brief Direction-of-motion frame {D} built from the aiming pose, and the
 *        Y-X-Z Euler decomposition of the {R} -> {D} rotation.
 *
 * {R} has its origin at the shoulder joint centre. The x_d axis points from
 * the shoulder to the hand at aiming time, z_d is normal to the
 * shoulder-elbow-hand triangle and y_d completes a right-handed triad.
 */
#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace reachsim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

class DegenerateGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EulerYXZ {
  double alpha = 0.0;  ///< about y_r [rad]
  double beta = 0.0;   ///< about x_r [rad]
  double gamma = 0.0;  ///< about z_r [rad]
  bool gimbal_lock = false;
};

struct FrameSet {
  Vec3 x_d = Vec3::UnitX();
  Vec3 y_d = Vec3::UnitY();
  Vec3 z_d = Vec3::UnitZ();
  /// Maps {R} coordinates to {D} coordinates; rows are x_d, y_d, z_d.
  Mat3 rotation = Mat3::Identity();
  EulerYXZ euler;
  /// z_d was negated to keep a positive z_r component (elbow on the +y_d
  /// side of the reach line).
  bool flipped = false;

  static FrameSet identity() { return {}; }
};

inline constexpr double kFrameEpsilon = 1e-9;
inline constexpr double kGimbalEpsilon = 1e-6;

/// Builds {D} from the hand position and shoulder->elbow vector, both in {R}.
/// Throws DegenerateGeometry when the hand is at the shoulder or the elbow is
/// collinear with the reach line.
FrameSet build_direction_frame(const Vec3& hand, const Vec3& shoulder_to_elbow);

/// Frame whose rotation is the given orthonormal matrix ({R} -> {D}).
FrameSet frame_from_rotation(const Mat3& rotation);

EulerYXZ euler_yxz_decompose(const FrameSet& f);
EulerYXZ euler_yxz_decompose(const Mat3& rotation);

/// R_y(alpha) * R_x(beta) * R_z(gamma).
Mat3 euler_yxz_compose(double alpha, double beta, double gamma);

Vec3 to_direction_frame(const FrameSet& f, const Vec3& v);
Vec3 from_direction_frame(const FrameSet& f, const Vec3& v);

}  // namespace reachsim
