// Helpers shared by the unit tests and the acceptance runner: scratch
// directories, fixtures and naive reference implementations.
#pragma once

#include "reachsim/analysis.hpp"
#include "reachsim/simulator.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

namespace testsupport {

using reachsim::Vec2;
using reachsim::Vec3;

inline std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::path(REACHSIM_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Min-jerk speed of a unit move over 1 s, 90 Hz, 91 samples.
inline reachsim::SpeedProfile min_jerk_speed() {
  reachsim::SpeedProfile p;
  p.sample_period = 1.0 / 90.0;
  for (int k = 0; k <= 90; ++k) {
    const double tau = k / 90.0;
    p.values.push_back(30 * tau * tau - 60 * tau * tau * tau + 30 * tau * tau * tau * tau);
  }
  return p;
}

// Additive 10 Hz ripple at 20% of the peak speed.
inline reachsim::SpeedProfile rippled(reachsim::SpeedProfile p) {
  double peak = 0.0;
  for (double v : p.values) peak = std::max(peak, v);
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    p.values[k] += 0.2 * peak * std::sin(2 * std::numbers::pi * 10.0 * k * p.sample_period);
  }
  return p;
}

// From tests/oracles/sal_oracle.py (DTFT + adaptive quadrature).
inline constexpr double kOracleSalMinJerk = -1.792162395818;
inline constexpr double kOracleSalRippled = -1.792658176749;

// sigma_mu written out as loops over samples and iterations.
inline double naive_variability(const std::vector<std::vector<Vec2>>& paths) {
  const std::size_t iters = paths.size();
  const std::size_t n = paths[0].size();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < iters; ++i) {
      mx += paths[i][k].x();
      my += paths[i][k].y();
    }
    mx /= iters;
    my /= iters;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < iters; ++i) {
      sx += (paths[i][k].x() - mx) * (paths[i][k].x() - mx);
      sy += (paths[i][k].y() - my) * (paths[i][k].y() - my);
    }
    total += std::sqrt(sx / iters + sy / iters);
  }
  return total / n;
}

inline double naive_difference(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double dx = a[k].x() - b[k].x();
    const double dy = a[k].y() - b[k].y();
    total += std::sqrt(dx * dx + dy * dy);
  }
  return total;
}

inline double naive_displacement(const Vec3& first, const Vec3& last) {
  const double dx = last.x() - first.x(), dy = last.y() - first.y(), dz = last.z() - first.z();
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline std::vector<reachsim::NormalizedPath> as_paths(const std::vector<std::vector<Vec2>>& raw) {
  std::vector<reachsim::NormalizedPath> out;
  for (const auto& r : raw) out.push_back({reachsim::PathKind::Hand, r, {}});
  return out;
}

// Largest distance of the hand from the line through the shoulder and the
// hand at the moment the controller was enabled, over the enabled samples.
inline double ts_line_deviation(const reachsim::IterationResult& r) {
  const auto& s = r.trajectory.samples;
  std::size_t on = 0;
  while (on < s.size() && !s[on].enabled) ++on;
  if (on == s.size()) return -1.0;
  const Vec3 origin = s[on].shoulder;
  const Vec3 dir = (s[on].hand - origin).normalized();
  double worst = 0.0;
  for (std::size_t k = on; k < s.size() && s[k].enabled; ++k) {
    const Vec3 d = s[k].hand - origin;
    worst = std::max(worst, (d - d.dot(dir) * dir).norm());
  }
  return worst;
}

inline reachsim::IterationResult run_ts(const std::string& target, double rate_hz) {
  const auto spec = reachsim::TaskSpec::standard(1.8, 0.7);
  const reachsim::ArmConfig arm;
  reachsim::SimParams params;
  params.rate_hz = rate_hz;
  params.jitter_sigma = 0.0;
  const auto script = reachsim::default_script(spec, arm, params, target, reachsim::Modality::TS);
  return reachsim::run_iteration(spec, arm, params, target, reachsim::Modality::TS, script, 0);
}

// Config text for an arm whose TS reach is pushed through the singular
// pose: long upper arm, short forearm, object close to the shoulder and
// the shoulder over-driven by 5 degrees.
inline std::string singular_ts_config() {
  return "[arm]\nupper_len = 0.45\nlower_len = 0.20\n"
         "[task]\ntargets = Near\niterations = 1\n"
         "[controllers]\nlist = TS\n"
         "[sim]\njitter_sigma = 0\n"
         "[script]\nts_shoulder_offset_deg = -5\n"
         "[targets]\nNear = 0.348, 1.086, 0\n";
}

}  // namespace testsupport
