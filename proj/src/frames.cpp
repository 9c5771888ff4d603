#include "reachsim/frames.hpp"

#include <cmath>

namespace reachsim {

FrameSet build_direction_frame(const Vec3& hand, const Vec3& shoulder_to_elbow) {
  const double reach = hand.norm();
  if (!(reach > kFrameEpsilon)) {
    throw DegenerateGeometry("hand coincides with the shoulder; reach direction undefined");
  }
  FrameSet f;
  f.x_d = hand / reach;
  Vec3 normal = shoulder_to_elbow.cross(f.x_d);
  const double area = normal.norm();
  if (!(area > kFrameEpsilon)) {
    throw DegenerateGeometry("elbow is collinear with the reach line; S-E-H plane undefined");
  }
  f.z_d = normal / area;
  if (f.z_d.z() < 0.0) {
    f.z_d = -f.z_d;
    f.flipped = true;
  }
  f.y_d = f.z_d.cross(f.x_d);
  f.rotation.row(0) = f.x_d.transpose();
  f.rotation.row(1) = f.y_d.transpose();
  f.rotation.row(2) = f.z_d.transpose();
  f.euler = euler_yxz_decompose(f.rotation);
  return f;
}

FrameSet frame_from_rotation(const Mat3& rotation) {
  FrameSet f;
  f.rotation = rotation;
  f.x_d = rotation.row(0).transpose();
  f.y_d = rotation.row(1).transpose();
  f.z_d = rotation.row(2).transpose();
  f.euler = euler_yxz_decompose(rotation);
  return f;
}

EulerYXZ euler_yxz_decompose(const FrameSet& f) { return euler_yxz_decompose(f.rotation); }

// R_y(a) R_x(b) R_z(g) =
//   [ ca cg + sa sb sg   -ca sg + sa sb cg   sa cb ]
//   [ cb sg               cb cg             -sb    ]
//   [ -sa cg + ca sb sg   sa sg + ca sb cg   ca cb ]
EulerYXZ euler_yxz_decompose(const Mat3& m) {
  EulerYXZ e;
  const double cb = std::hypot(m(1, 0), m(1, 1));
  e.beta = std::atan2(-m(1, 2), cb);
  if (cb < kGimbalEpsilon) {
    e.gimbal_lock = true;
    e.gamma = 0.0;
    e.alpha = std::atan2(-m(2, 0), m(0, 0));
  } else {
    e.alpha = std::atan2(m(0, 2), m(2, 2));
    e.gamma = std::atan2(m(1, 0), m(1, 1));
  }
  return e;
}

Mat3 euler_yxz_compose(double alpha, double beta, double gamma) {
  return (Eigen::AngleAxisd(alpha, Vec3::UnitY()) * Eigen::AngleAxisd(beta, Vec3::UnitX()) *
          Eigen::AngleAxisd(gamma, Vec3::UnitZ()))
      .toRotationMatrix();
}

Vec3 to_direction_frame(const FrameSet& f, const Vec3& v) { return f.rotation * v; }

Vec3 from_direction_frame(const FrameSet& f, const Vec3& v) { return f.rotation.transpose() * v; }

}  // namespace reachsim
