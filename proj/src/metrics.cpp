#include "reachsim/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace reachsim {

std::string_view to_string(TaskTimeStatistic s) { return s == TaskTimeStatistic::Mean ? "mean" : "median"; }

std::string_view to_string(PathDifferenceForm f) { return f == PathDifferenceForm::Sum ? "sum" : "mean"; }

namespace {

template <typename Fn>
SpeedProfile speed_profile(const Trajectory& traj, Fn position) {
  const std::size_t n = traj.size();
  if (n < 2) throw EmptyInput("speed profile needs at least 2 samples");
  SpeedProfile p;
  p.sample_period = (traj.samples.back().t - traj.samples.front().t) / static_cast<double>(n - 1);
  p.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k + 1 == n ? k : k + 1;
    const auto d = (position(traj.samples[hi]) - position(traj.samples[lo])).eval();
    p.values[k] = d.norm() / (traj.samples[hi].t - traj.samples[lo].t);
  }
  return p;
}

}  // namespace

SpeedProfile hand_speed_profile(const Trajectory& traj) {
  return speed_profile(traj, [](const TrajectorySample& s) { return s.hand; });
}

SpeedProfile joint_speed_profile(const Trajectory& traj) {
  return speed_profile(traj, [](const TrajectorySample& s) { return Vec2(s.joint.q_s, s.joint.q_e); });
}

double task_time(std::span<const double> completion_times, TaskTimeStatistic stat) {
  if (completion_times.empty()) throw EmptyInput("task_time needs at least one iteration");
  if (stat == TaskTimeStatistic::Mean) {
    double sum = 0.0;
    for (double t : completion_times) sum += t;
    return sum / static_cast<double>(completion_times.size());
  }
  std::vector<double> sorted(completion_times.begin(), completion_times.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  return sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

double task_time(std::span<const IterationResult> results, TaskTimeStatistic stat) {
  std::vector<double> t;
  t.reserve(results.size());
  for (const auto& r : results) t.push_back(r.t_f);
  return task_time(t, stat);
}

double terminal_error(std::span<const IterationResult> results) {
  if (results.empty()) throw EmptyInput("terminal_error needs at least one iteration");
  double sum = 0.0;
  for (const auto& r : results) {
    if (r.trajectory.empty()) throw EmptyInput("iteration without samples");
    sum += (r.target_pos - r.trajectory.samples.back().hand).norm();
  }
  return sum / static_cast<double>(results.size());
}

namespace {

std::size_t common_length(std::span<const NormalizedPath> paths) {
  if (paths.empty()) throw EmptyInput("no paths");
  const std::size_t n = paths.front().samples.size();
  for (const auto& p : paths) {
    if (p.samples.size() != n) throw LengthMismatch("paths differ in sample count");
  }
  return n;
}

}  // namespace

PathPoints mean_path(std::span<const NormalizedPath> paths) {
  const std::size_t n = common_length(paths);
  // Offsets from the first path, so identical paths give an exact mean.
  const PathPoints& first = paths.front().samples;
  PathPoints offset(n, Vec2::Zero());
  for (const auto& p : paths.subspan(1)) {
    for (std::size_t k = 0; k < n; ++k) offset[k] += p.samples[k] - first[k];
  }
  PathPoints mean(n);
  for (std::size_t k = 0; k < n; ++k) mean[k] = first[k] + offset[k] / static_cast<double>(paths.size());
  return mean;
}

PathPoints std_band(std::span<const NormalizedPath> paths) {
  const PathPoints mean = mean_path(paths);
  PathPoints band(mean.size(), Vec2::Zero());
  for (const auto& p : paths) {
    for (std::size_t k = 0; k < mean.size(); ++k) band[k] += (p.samples[k] - mean[k]).cwiseAbs2();
  }
  for (auto& b : band) b = (b / static_cast<double>(paths.size())).cwiseSqrt();
  return band;
}

double path_variability(std::span<const NormalizedPath> paths) {
  if (paths.size() < 2) throw EmptyInput("path variability needs at least 2 paths");
  const PathPoints band = std_band(paths);
  if (band.empty()) throw EmptyInput("paths have no samples");
  double sum = 0.0;
  for (const auto& b : band) sum += b.norm();
  return sum / static_cast<double>(band.size());
}

double path_difference(std::span<const Vec2> a, std::span<const Vec2> b, PathDifferenceForm form) {
  if (a.size() != b.size()) throw LengthMismatch("mean paths differ in sample count");
  if (a.empty()) throw EmptyInput("mean paths have no samples");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += (a[k] - b[k]).norm();
  return form == PathDifferenceForm::Sum ? sum : sum / static_cast<double>(a.size());
}

double upper_body_displacement(const Trajectory& traj, UpperBodyMarker marker) {
  if (traj.size() < 2) throw EmptyInput("displacement needs at least 2 samples");
  const auto& first = traj.samples.front();
  const auto& last = traj.samples.back();
  return marker == UpperBodyMarker::C7 ? (last.trunk - first.trunk).norm() : (last.shoulder - first.shoulder).norm();
}

}  // namespace reachsim
