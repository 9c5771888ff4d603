#include "reachsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace reachsim {

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::AB: return "AB";
    case Modality::TS: return "TS";
    case Modality::JS: return "JS";
    case Modality::EP: return "EP";
  }
  return "?";
}

Modality modality_from_string(std::string_view name) {
  if (name == "AB") return Modality::AB;
  if (name == "TS") return Modality::TS;
  if (name == "JS") return Modality::JS;
  if (name == "EP") return Modality::EP;
  throw std::invalid_argument("unknown controller '" + std::string(name) + "'");
}

std::optional<ControllerKind> controller_of(Modality m) {
  switch (m) {
    case Modality::TS: return ControllerKind::TS;
    case Modality::JS: return ControllerKind::JS;
    case Modality::EP: return ControllerKind::EP;
    case Modality::AB: break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Task

TaskSpec TaskSpec::standard(double height, double arm_length, int iterations) {
  TaskSpec spec;
  spec.height = height;
  spec.arm_length = arm_length;
  spec.iterations = iterations;
  for (const auto& row : kTargetTable) {
    spec.targets.push_back(
        {std::string(row.name), Vec3(row.x_arm_fraction * arm_length, row.y_height_fraction * height, row.z)});
  }
  return spec;
}

void TaskSpec::validate() const {
  if (!(height > 0.0) || !std::isfinite(height)) throw std::invalid_argument("task.height must be > 0");
  if (!(arm_length > 0.0) || !std::isfinite(arm_length)) throw std::invalid_argument("task.arm_length must be > 0");
  if (iterations < 1) throw std::invalid_argument("task.iterations must be >= 1");
  std::set<std::string> seen;
  for (const auto& t : targets) {
    if (!seen.insert(t.name).second) throw std::invalid_argument("duplicate target name '" + t.name + "'");
    if (!t.position.allFinite()) throw std::invalid_argument("target '" + t.name + "' is not finite");
  }
  if (!has_target("Start")) throw std::invalid_argument("task has no Start target");
}

bool TaskSpec::has_target(std::string_view name) const {
  return std::any_of(targets.begin(), targets.end(), [&](const NamedTarget& t) { return t.name == name; });
}

const Vec3& TaskSpec::target(std::string_view name) const {
  for (const auto& t : targets) {
    if (t.name == name) return t.position;
  }
  throw UnknownTarget("unknown target '" + std::string(name) + "'");
}

std::vector<std::string> TaskSpec::reach_targets() const {
  std::vector<std::string> out;
  for (const auto& t : targets) {
    if (t.name != "Start") out.push_back(t.name);
  }
  return out;
}

void SimParams::validate() const {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("sim.rate_hz must be > 0");
  if (!(timeout > 0.0)) throw std::invalid_argument("sim.timeout must be > 0");
  if (!(stop_speed > 0.0)) throw std::invalid_argument("sim.stop_speed must be > 0");
  if (!(stop_radius > 0.0)) throw std::invalid_argument("sim.stop_radius must be > 0");
  if (!(jitter_sigma >= 0.0)) throw std::invalid_argument("sim.jitter_sigma must be >= 0");
  synergy.validate();
  if (!(activation.threshold >= 0.0 && activation.threshold < 1.0)) {
    throw std::invalid_argument("activation.threshold must be in [0, 1)");
  }
  if (!(activation.gain > 0.0)) throw std::invalid_argument("activation.gain must be > 0");
  const auto& s = script;
  for (double d : {s.ab_duration, s.ts_aim_duration, s.ts_reach_duration, s.js_duration, s.ep_shoulder_duration,
                   s.ep_elbow_duration, s.correction_duration}) {
    if (!(d > 0.0)) throw std::invalid_argument("script durations must be > 0");
  }
  if (!(s.js_enable_time >= 0.0)) throw std::invalid_argument("script.js_enable_time must be >= 0");
}

// ---------------------------------------------------------------------------
// Geometry

StartPose start_pose(const TaskSpec& spec, const ArmConfig& arm) {
  StartPose p;
  const Vec3& start = spec.target("Start");
  p.shoulder = start + Vec3(-arm.lower_len, arm.upper_len, 0.0);
  p.c7 = p.shoulder + kC7Offset;
  p.q_e = 90.0 * kDegToRad;
  p.q_s = shoulder_angle_on_axis(arm, p.q_e);
  const Vec3 x = Vec3(arm.lower_len, -arm.upper_len, 0.0).normalized();
  const Vec3 z = Vec3::UnitZ();
  p.plane.col(0) = x;
  p.plane.col(1) = z.cross(x);
  p.plane.col(2) = z;
  return p;
}

namespace {

Mat3 rotate_z(double angle) { return Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix(); }

/// Smallest rotation taking unit vector a onto unit vector b.
Mat3 minimal_rotation(const Vec3& a, const Vec3& b) {
  const Vec3 axis = a.cross(b);
  const double s = axis.norm();
  if (s < 1e-12) return Mat3::Identity();
  return Eigen::AngleAxisd(std::atan2(s, a.dot(b)), axis / s).toRotationMatrix();
}

void set_aim(MotionScript& script, const Mat3& from, const Mat3& to, double t_start, double duration) {
  const Eigen::AngleAxisd aa(to * from.transpose());
  if (std::abs(aa.angle()) < 1e-12) return;
  script.aim_axis = aa.axis().normalized();
  script.phases.push_back({Dof::Aim, 0.0, aa.angle(), t_start, duration});
}

}  // namespace

MotionScript default_script(const TaskSpec& spec, const ArmConfig& arm, const SimParams& params,
                            std::string_view target, Modality modality) {
  const StartPose start = start_pose(spec, arm);
  const Vec3 goal = spec.target(target);
  const Vec3 delta = goal - start.shoulder;
  const ScriptParams& sp = params.script;

  // Lean the trunk forward only as far as needed to keep the elbow at or
  // above final_elbow_min.
  const double comfortable = arm.reach(sp.final_elbow_min);
  double trunk = 0.0;
  double planned_reach = delta.norm();
  if (planned_reach > comfortable) {
    const double lateral2 = delta.y() * delta.y() + delta.z() * delta.z();
    if (lateral2 > comfortable * comfortable) {
      throw std::domain_error("target '" + std::string(target) + "' cannot be reached by leaning forward");
    }
    trunk = delta.x() - std::sqrt(comfortable * comfortable - lateral2);
    planned_reach = comfortable;
  }
  const double q_e_final = elbow_for_reach(arm, planned_reach);
  const Vec3 shoulder_final = start.shoulder + Vec3(trunk, 0.0, 0.0);
  const Vec3 aim_dir = (goal - shoulder_final).normalized();
  const Mat3 aimed_plane = minimal_rotation(start.plane.col(0), aim_dir) * start.plane;
  const double q_s_on_axis = shoulder_angle_on_axis(arm, q_e_final);

  MotionScript script;
  auto add_trunk = [&](double t0, double duration) {
    if (trunk != 0.0) script.phases.push_back({Dof::Trunk, 0.0, trunk, t0, duration});
  };

  switch (modality) {
    case Modality::AB: {
      const double d = sp.ab_duration;
      add_trunk(0.0, d);
      set_aim(script, start.plane, aimed_plane, 0.0, d);
      script.phases.push_back({Dof::Shoulder, start.q_s, q_s_on_axis, 0.0, d});
      script.phases.push_back({Dof::Elbow, start.q_e, q_e_final, 0.0, d});
      break;
    }
    case Modality::TS: {
      // Aim: lean and swing the locked arm until shoulder, hand and object
      // are collinear, then enable and extend along the line.
      const double aim = sp.ts_aim_duration;
      add_trunk(0.0, aim);
      set_aim(script, start.plane, aimed_plane, 0.0, aim);
      script.toggle_times.push_back(aim);
      script.phases.push_back({Dof::Shoulder, start.q_s, q_s_on_axis + sp.ts_shoulder_offset, aim, sp.ts_reach_duration});
      break;
    }
    case Modality::JS: {
      // The coupled elbow extends by theta times the shoulder flexion; the
      // user picks the shoulder excursion and arm plane that land the hand.
      const double theta = params.synergy.theta;
      if (theta == 0.0) throw std::domain_error("JS with theta = 0 cannot extend the elbow");
      const double q_s_final = start.q_s + (start.q_e - q_e_final) / theta;
      const double hand_angle = q_s_final - q_s_on_axis;
      const Mat3 plane = aimed_plane * rotate_z(-hand_angle);
      const double d = sp.js_duration;
      add_trunk(0.0, d);
      set_aim(script, start.plane, plane, 0.0, d);
      script.phases.push_back({Dof::Shoulder, start.q_s, q_s_final, 0.0, d});
      script.toggle_times.push_back(sp.js_enable_time);
      break;
    }
    case Modality::EP: {
      // Sequential strategy: place the residual limb, then drive the elbow.
      const double d1 = sp.ep_shoulder_duration;
      add_trunk(0.0, d1);
      set_aim(script, start.plane, aimed_plane, 0.0, d1);
      script.phases.push_back({Dof::Shoulder, start.q_s, q_s_on_axis, 0.0, d1});
      script.phases.push_back({Dof::ElbowActivation, start.q_e, q_e_final, d1, sp.ep_elbow_duration});
      script.toggle_times.push_back(0.0);
      break;
    }
  }
  script.validate();
  return script;
}

// ---------------------------------------------------------------------------
// Iteration

namespace {

struct Body {
  Vec3 shoulder;
  Vec3 c7;
  Vec3 elbow;
  Vec3 hand;
  double q_s = 0.0;
};

Body evaluate_body(const ArmConfig& arm, const StartPose& start, const MotionScript& s, double t, double q_e) {
  const double trunk = s.value(Dof::Trunk, t, 0.0);
  const double aim = s.value(Dof::Aim, t, 0.0);
  const Mat3 plane = Eigen::AngleAxisd(aim, s.aim_axis).toRotationMatrix() * start.plane;
  Body b;
  b.q_s = s.value(Dof::Shoulder, t, start.q_s);
  b.shoulder = start.shoulder + Vec3(trunk, 0.0, 0.0);
  b.c7 = start.c7 + Vec3(trunk, 0.0, 0.0);
  b.elbow = b.shoulder + plane * Vec3(arm.upper_len * std::cos(b.q_s), arm.upper_len * std::sin(b.q_s), 0.0);
  const auto h = forward_kinematics(arm, b.q_s, q_e);
  b.hand = b.shoulder + plane * Vec3(h.x, h.y, 0.0);
  return b;
}

// The user sees the hand at rest short of the object and moves back to the
// planned final posture. A TS user re-aims instead: disable, put the hand
// back on the shoulder-object line with the locked elbow, enable, extend.
// Returns the new toggle times.
std::vector<double> append_correction(MotionScript& script, const MotionScript& plan, Modality modality,
                                      const ArmConfig& arm, const StartPose& start, double t, double q_e,
                                      bool enabled, double duration) {
  const double never = std::numeric_limits<double>::max();
  auto correct = [&](Dof dof, double rest, double t0, std::optional<double> goal = std::nullopt) {
    if (!plan.drives(dof)) return;
    const double now = dof == Dof::ElbowActivation ? q_e : script.value(dof, t0, rest);
    const double end = goal.value_or(plan.value(dof, never, rest));
    if (std::abs(end - now) > 1e-12) script.phases.push_back({dof, now, end, t0, duration});
  };
  correct(Dof::Trunk, 0.0, t);
  correct(Dof::Aim, 0.0, t);
  // A TS re-aim needs the controller on; otherwise just move the limb back.
  if (modality != Modality::TS || !enabled) {
    correct(Dof::Shoulder, start.q_s, t);
    correct(Dof::Elbow, start.q_e, t);
    correct(Dof::ElbowActivation, start.q_e, t);
    return {};
  }
  correct(Dof::Shoulder, start.q_s, t, shoulder_angle_on_axis(arm, q_e));
  correct(Dof::Shoulder, start.q_s, t + duration);
  return {t, t + duration};
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

TrajectorySample record(double t, const Body& b, double q_e, double qdot_s, double qdot_e, bool enabled,
                        bool singular, bool clamped) {
  TrajectorySample s;
  s.t = quantize(t);
  s.hand = quantize(b.hand);
  s.joint = {quantize(b.q_s), quantize(q_e), quantize(qdot_s), quantize(qdot_e)};
  s.trunk = quantize(b.c7);
  s.shoulder = quantize(b.shoulder);
  s.enabled = enabled;
  s.singular = singular;
  s.clamped = clamped;
  return s;
}

}  // namespace

IterationResult run_iteration(const TaskSpec& spec, const ArmConfig& arm, const SimParams& params,
                              std::string_view target, Modality modality, const MotionScript& base_script,
                              std::uint64_t seed) {
  const Vec3 goal = spec.target(target);
  MotionScript script = jitter(base_script, params.jitter_sigma, seed);
  script.validate();
  const StartPose start = start_pose(spec, arm);
  const auto controller = controller_of(modality);
  const double dt = params.dt();

  IterationResult result;
  result.target = std::string(target);
  result.target_pos = goal;
  result.modality = modality;
  result.label = std::string(to_string(modality));
  result.seed = seed;

  std::vector<double> toggles = script.toggle_times;
  std::sort(toggles.begin(), toggles.end());
  std::size_t next_toggle = 0;

  ControllerState cs;
  double q_e = start.q_e;
  Body body = evaluate_body(arm, start, script, 0.0, q_e);
  auto& samples = result.trajectory.samples;
  samples.push_back(record(0.0, body, q_e, 0.0, 0.0, false, false, false));

  const auto max_steps = static_cast<long>(std::ceil(params.timeout / dt - 1e-9));
  for (long k = 0; k < max_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double t_next = static_cast<double>(k + 1) * dt;

    while (next_toggle < toggles.size() && toggles[next_toggle] <= t + 1e-9) {
      if (controller) {
        cs = toggle(cs, *controller, body.hand - body.shoulder, body.elbow - body.shoulder);
      }
      ++next_toggle;
    }

    // The shoulder and trunk move independently of the elbow, so the next
    // pose with the current elbow angle gives the residual-limb increment
    // measured over this tick.
    const Body ahead = evaluate_body(arm, start, script, t_next, q_e);
    const double qdot_s = (ahead.q_s - body.q_s) / dt;

    ElbowCommand cmd;
    if (modality == Modality::AB) {
      const double next = script.value(Dof::Elbow, t_next, start.q_e);
      cmd.qdot_e = (next - q_e) / dt;
    } else if (cs.enabled) {
      switch (*controller) {
        case ControllerKind::TS: {
          const FrameSet& frame = *cs.frame;
          const double sign = frame.flipped ? -1.0 : 1.0;
          const Vec3 se_now = to_direction_frame(frame, body.elbow - body.shoulder);
          const Vec3 se_next = to_direction_frame(frame, ahead.elbow - ahead.shoulder);
          const double q_s_d = std::atan2(se_now.y(), se_now.x());
          const double q_s_d_next = std::atan2(se_next.y(), se_next.x());
          result.max_out_of_plane = std::max(result.max_out_of_plane, std::abs(se_now.z()) / se_now.norm());
          PlanarJointState st{q_s_d, sign * q_e, wrap_angle(q_s_d_next - q_s_d) / dt, 0.0};
          cmd = ts_elbow_velocity(arm, st, params.synergy);
          cmd.qdot_e *= sign;
          break;
        }
        case ControllerKind::JS:
          // Shoulder flexion (+q_s) couples to elbow extension (-q_e).
          cmd = js_elbow_velocity(params.synergy, qdot_s);
          cmd.qdot_e = -cmd.qdot_e;
          break;
        case ControllerKind::EP: {
          const double intended =
              (script.value(Dof::ElbowActivation, t_next, start.q_e) - script.value(Dof::ElbowActivation, t, start.q_e)) /
              dt;
          ActivationSample a = params.activation;
          const double level = std::min(
              1.0, a.threshold + (1.0 - a.threshold) * std::abs(intended) / a.gain);
          a.a_flex = intended > 0.0 ? level : 0.0;
          a.a_ext = intended < 0.0 ? level : 0.0;
          cmd = ep_elbow_velocity(a, params.synergy.qdot_max);
          break;
        }
      }
    }

    if (modality != Modality::AB) cmd = limit_to_range(arm, q_e, dt, cmd);
    q_e += dt * cmd.qdot_e;
    if (modality != Modality::AB) q_e = std::clamp(q_e, arm.elbow_min, arm.elbow_max);

    result.flags.singularity_hit |= cmd.near_singular;
    result.flags.range_clamped |= cmd.range_clamped;

    const Vec3 previous_hand = body.hand;
    body = evaluate_body(arm, start, script, t_next, q_e);
    samples.push_back(record(t_next, body, q_e, qdot_s, cmd.qdot_e, cs.enabled || modality == Modality::AB,
                             cmd.near_singular, cmd.range_clamped));

    const double speed = (body.hand - previous_hand).norm() / dt;
    if (speed < params.stop_speed && (body.hand - goal).norm() < params.stop_radius) break;
    if (speed < params.stop_speed && t_next >= script.duration() - 1e-9 && result.corrections < kMaxCorrections) {
      for (double toggle_at : append_correction(script, base_script, modality, arm, start, t_next, q_e,
                                                cs.enabled, params.script.correction_duration)) {
        toggles.push_back(toggle_at);
      }
      ++result.corrections;
    }
    if (k + 1 == max_steps) result.flags.timeout = true;
  }

  result.t_f = samples.back().t;
  result.terminal_error = (samples.back().hand - goal).norm();
  return result;
}

}  // namespace reachsim
