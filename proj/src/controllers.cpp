#include "reachsim/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reachsim {

std::string_view to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::TS: return "TS";
    case ControllerKind::JS: return "JS";
    case ControllerKind::EP: return "EP";
  }
  return "?";
}

ControllerKind controller_from_string(std::string_view name) {
  if (name == "TS") return ControllerKind::TS;
  if (name == "JS") return ControllerKind::JS;
  if (name == "EP") return ControllerKind::EP;
  throw std::invalid_argument("unknown controller '" + std::string(name) + "'");
}

void SynergyParams::validate() const {
  if (!std::isfinite(theta)) throw std::invalid_argument("synergy.theta must be finite");
  if (!(epsilon_cse > 0.0)) throw std::invalid_argument("synergy.epsilon_cse must be > 0");
  if (!(qdot_max > 0.0)) throw std::invalid_argument("synergy.qdot_max must be > 0");
}

namespace {

ElbowCommand saturate(double raw, double qdot_max) {
  ElbowCommand c;
  c.unsaturated = raw;
  c.qdot_e = std::clamp(raw, -qdot_max, qdot_max);
  c.saturated = c.qdot_e != raw;
  return c;
}

}  // namespace

ElbowCommand ts_elbow_velocity(const ArmConfig& cfg, const PlanarJointState& st, const SynergyParams& p) {
  const double c_s = std::cos(st.q_s);
  const double c_se = std::cos(st.q_s + st.q_e);
  if (std::abs(c_se) < p.epsilon_cse) {
    ElbowCommand c;
    c.near_singular = true;
    return c;
  }
  const double raw = -(cfg.upper_len * c_s + cfg.lower_len * c_se) / (cfg.lower_len * c_se) * st.qdot_s;
  return saturate(raw, p.qdot_max);
}

ElbowCommand js_elbow_velocity(const SynergyParams& p, double qdot_s) {
  return saturate(p.theta * qdot_s, p.qdot_max);
}

double threshold_activation(double a, double threshold) {
  return std::max(0.0, a - threshold) / (1.0 - threshold);
}

ElbowCommand ep_elbow_velocity(const ActivationSample& a, double qdot_max) {
  const double d = threshold_activation(a.a_flex, a.threshold) - threshold_activation(a.a_ext, a.threshold);
  return saturate(a.gain * d, qdot_max);
}

ElbowCommand limit_to_range(const ArmConfig& cfg, double q_e, double dt, ElbowCommand cmd) {
  const double next = q_e + dt * cmd.qdot_e;
  if (next > cfg.elbow_max) {
    cmd.qdot_e = std::max(0.0, (cfg.elbow_max - q_e) / dt);
    cmd.range_clamped = true;
  } else if (next < cfg.elbow_min) {
    cmd.qdot_e = std::min(0.0, (cfg.elbow_min - q_e) / dt);
    cmd.range_clamped = true;
  }
  return cmd;
}

ControllerState toggle(const ControllerState& cs, ControllerKind kind, const Vec3& hand,
                       const Vec3& shoulder_to_elbow) {
  ControllerState next = cs;
  if (!cs.enabled && kind == ControllerKind::TS) {
    next.frame = build_direction_frame(hand, shoulder_to_elbow);
  }
  next.enabled = !cs.enabled;
  return next;
}

}  // namespace reachsim
