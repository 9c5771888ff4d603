#include "reachsim/motion_script.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace reachsim {

double min_jerk(double start, double end, double duration, double t) {
  const double tau = std::clamp(t / duration, 0.0, 1.0);
  const double tau3 = tau * tau * tau;
  return start + (end - start) * tau3 * (10.0 - 15.0 * tau + 6.0 * tau * tau);
}

double min_jerk_velocity(double start, double end, double duration, double t) {
  if (t <= 0.0 || t >= duration) return 0.0;
  const double tau = t / duration;
  return (end - start) * 30.0 * tau * tau * (1.0 - tau) * (1.0 - tau) / duration;
}

std::string_view to_string(Dof dof) {
  switch (dof) {
    case Dof::Trunk: return "trunk";
    case Dof::Aim: return "aim";
    case Dof::Shoulder: return "shoulder";
    case Dof::Elbow: return "elbow";
    case Dof::ElbowActivation: return "elbow_activation";
  }
  return "?";
}

namespace {

std::vector<const Phase*> phases_of(const std::vector<Phase>& phases, Dof dof) {
  std::vector<const Phase*> out;
  for (const auto& p : phases) {
    if (p.dof == dof) out.push_back(&p);
  }
  std::sort(out.begin(), out.end(), [](const Phase* a, const Phase* b) { return a->t_start < b->t_start; });
  return out;
}

}  // namespace

void MotionScript::validate() const {
  for (const auto& p : phases) {
    if (!(p.duration > 0.0) || !std::isfinite(p.duration)) {
      throw std::invalid_argument("script phase on " + std::string(to_string(p.dof)) +
                                  " has non-positive duration");
    }
    if (!std::isfinite(p.start_value) || !std::isfinite(p.end_value) || !(p.t_start >= 0.0)) {
      throw std::invalid_argument("script phase on " + std::string(to_string(p.dof)) + " is not finite");
    }
  }
  for (Dof dof : {Dof::Trunk, Dof::Aim, Dof::Shoulder, Dof::Elbow, Dof::ElbowActivation}) {
    const auto ps = phases_of(phases, dof);
    for (std::size_t i = 1; i < ps.size(); ++i) {
      if (ps[i]->t_start < ps[i - 1]->t_end() - 1e-12) {
        throw std::invalid_argument("overlapping script phases on " + std::string(to_string(dof)));
      }
    }
  }
  if (!aim_axis.allFinite() || std::abs(aim_axis.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("script aim axis must be a unit vector");
  }
}

bool MotionScript::drives(Dof dof) const {
  return std::any_of(phases.begin(), phases.end(), [dof](const Phase& p) { return p.dof == dof; });
}

double MotionScript::value(Dof dof, double t, double rest) const {
  const auto ps = phases_of(phases, dof);
  if (ps.empty()) return rest;
  if (t <= ps.front()->t_start) return ps.front()->start_value;
  const Phase* active = ps.front();
  for (const Phase* p : ps) {
    if (p->t_start <= t) active = p;
  }
  return min_jerk(active->start_value, active->end_value, active->duration, t - active->t_start);
}

double MotionScript::velocity(Dof dof, double t) const {
  for (const Phase* p : phases_of(phases, dof)) {
    if (t > p->t_start && t < p->t_end()) {
      return min_jerk_velocity(p->start_value, p->end_value, p->duration, t - p->t_start);
    }
  }
  return 0.0;
}

double MotionScript::duration() const {
  double end = 0.0;
  for (const auto& p : phases) end = std::max(end, p.t_end());
  return end;
}

MotionScript jitter(const MotionScript& script, double sigma, std::uint64_t seed) {
  MotionScript out = script;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<std::size_t> order(out.phases.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = out.phases[a];
    const auto& pb = out.phases[b];
    if (pa.dof != pb.dof) return pa.dof < pb.dof;
    return pa.t_start < pb.t_start;
  });

  // Per DOF: original end of the previous phase and its perturbed value.
  std::map<Dof, std::pair<double, double>> chain;
  for (std::size_t idx : order) {
    Phase& p = out.phases[idx];
    const double original_end = p.end_value;
    const double amplitude = std::abs(p.end_value - p.start_value);
    if (auto it = chain.find(p.dof); it != chain.end() && std::abs(p.start_value - it->second.first) < 1e-12) {
      p.start_value = it->second.second;
    }
    p.end_value = original_end + sigma * amplitude * normal(rng);
    chain[p.dof] = {original_end, p.end_value};
  }
  return out;
}

}  // namespace reachsim
