#include "reachsim/kinematics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace reachsim {

void ArmConfig::validate() const {
  if (!(upper_len > 0.0) || !std::isfinite(upper_len)) {
    throw std::invalid_argument("arm.upper_len must be > 0, got " + std::to_string(upper_len));
  }
  if (!(lower_len > 0.0) || !std::isfinite(lower_len)) {
    throw std::invalid_argument("arm.lower_len must be > 0, got " + std::to_string(lower_len));
  }
  if (!(elbow_min > 0.0 && elbow_min < elbow_max && elbow_max < std::numbers::pi)) {
    throw std::invalid_argument("arm elbow range must satisfy 0 < elbow_min < elbow_max < pi");
  }
}

double ArmConfig::reach(double q_e) const {
  return std::sqrt(upper_len * upper_len + lower_len * lower_len +
                   2.0 * upper_len * lower_len * std::cos(q_e));
}

PlanarHandState forward_kinematics(const ArmConfig& cfg, double q_s, double q_e) {
  PlanarHandState h;
  h.x = cfg.upper_len * std::cos(q_s) + cfg.lower_len * std::cos(q_s + q_e);
  h.y = cfg.upper_len * std::sin(q_s) + cfg.lower_len * std::sin(q_s + q_e);
  return h;
}

Jacobian2x2 jacobian(const ArmConfig& cfg, double q_s, double q_e) {
  const double s_s = std::sin(q_s);
  const double c_s = std::cos(q_s);
  const double s_se = std::sin(q_s + q_e);
  const double c_se = std::cos(q_s + q_e);
  return Jacobian2x2{{-cfg.upper_len * s_s - cfg.lower_len * s_se, -cfg.lower_len * s_se,
                      cfg.upper_len * c_s + cfg.lower_len * c_se, cfg.lower_len * c_se}};
}

std::array<double, 2> hand_velocity(const Jacobian2x2& j, double qdot_s, double qdot_e) {
  return {j(0, 0) * qdot_s + j(0, 1) * qdot_e, j(1, 0) * qdot_s + j(1, 1) * qdot_e};
}

PlanarHandState hand_state(const ArmConfig& cfg, const PlanarJointState& st) {
  auto h = forward_kinematics(cfg, st.q_s, st.q_e);
  const auto v = hand_velocity(jacobian(cfg, st.q_s, st.q_e), st.qdot_s, st.qdot_e);
  h.xdot = v[0];
  h.ydot = v[1];
  return h;
}

double shoulder_angle_on_axis(const ArmConfig& cfg, double q_e) {
  return -std::atan2(cfg.lower_len * std::sin(q_e), cfg.upper_len + cfg.lower_len * std::cos(q_e));
}

double elbow_for_reach(const ArmConfig& cfg, double distance) {
  const double lu = cfg.upper_len;
  const double ll = cfg.lower_len;
  const double c = (distance * distance - lu * lu - ll * ll) / (2.0 * lu * ll);
  if (!(c >= -1.0 && c <= 1.0)) {
    throw std::domain_error("reach distance " + std::to_string(distance) + " m is outside the arm workspace");
  }
  return std::acos(c);
}

}  // namespace reachsim
