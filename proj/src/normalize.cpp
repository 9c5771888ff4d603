#include "reachsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace reachsim {

std::vector<double> design_lowpass_fir(int order, double kaiser_beta, double cutoff) {
  if (order < 1) throw std::invalid_argument("FIR order must be >= 1");
  if (!(cutoff > 0.0 && cutoff <= 0.5)) throw std::invalid_argument("FIR cutoff must be in (0, 0.5]");
  const int taps = order + 1;
  const double centre = 0.5 * order;
  const double i0_beta = std::cyl_bessel_i(0.0, kaiser_beta);
  std::vector<double> h(static_cast<std::size_t>(taps));
  double sum = 0.0;
  for (int n = 0; n < taps; ++n) {
    const double m = n - centre;
    const double arg = 2.0 * cutoff * m;
    const double sinc = m == 0.0 ? 1.0 : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
    const double r = 2.0 * n / order - 1.0;
    const double window = std::cyl_bessel_i(0.0, kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
    h[static_cast<std::size_t>(n)] = 2.0 * cutoff * sinc * window;
    sum += h[static_cast<std::size_t>(n)];
  }
  for (double& v : h) v /= sum;
  return h;
}

std::vector<double> filtfilt(std::span<const double> taps, std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2 || taps.empty()) return {x.begin(), x.end()};
  const std::size_t pad = std::min(3 * (taps.size() - 1), n - 1);

  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t k = pad; k >= 1; --k) ext.push_back(2.0 * x[0] - x[k]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t k = 1; k <= pad; ++k) ext.push_back(2.0 * x[n - 1] - x[n - 1 - k]);

  auto run = [&](const std::vector<double>& in) {
    std::vector<double> out(in.size(), 0.0);
    for (std::size_t i = 0; i < in.size(); ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < taps.size() && j <= i; ++j) acc += taps[j] * in[i - j];
      out[i] = acc;
    }
    return out;
  };
  std::vector<double> y = run(ext);
  std::reverse(y.begin(), y.end());
  y = run(y);
  std::reverse(y.begin(), y.end());
  return {y.begin() + static_cast<std::ptrdiff_t>(pad), y.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

PathPoints resample_uniform(std::span<const double> times, std::span<const Vec2> points,
                            const ResampleOptions& options) {
  const std::size_t m = points.size();
  if (m < 2) throw EmptyInput("resampling needs at least 2 samples");
  if (times.size() != m) throw LengthMismatch("times and points differ in length");
  if (options.samples < 2) throw std::invalid_argument("resampling needs at least 2 output samples");
  for (std::size_t i = 1; i < m; ++i) {
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("timestamps must be strictly increasing");
  }

  std::vector<double> xs(m);
  std::vector<double> ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = points[i].x();
    ys[i] = points[i].y();
  }
  if (options.anti_alias && m > options.samples) {
    // Cutoff at the output Nyquist rate relative to the input rate.
    const double ratio = static_cast<double>(m - 1) / static_cast<double>(options.samples - 1);
    const auto taps = design_lowpass_fir(kAntiAliasOrder, kAntiAliasKaiserBeta, 0.5 / ratio);
    xs = filtfilt(taps, xs);
    ys = filtfilt(taps, ys);
  }

  PathPoints out(options.samples);
  const double t0 = times.front();
  const double span = times.back() - t0;
  std::size_t seg = 0;
  for (std::size_t n = 0; n < options.samples; ++n) {
    if (n + 1 == options.samples) {
      out[n] = {xs.back(), ys.back()};
      break;
    }
    const double t = t0 + span * static_cast<double>(n) / static_cast<double>(options.samples - 1);
    while (seg + 2 < m && times[seg + 1] <= t) ++seg;
    const double w = (t - times[seg]) / (times[seg + 1] - times[seg]);
    out[n] = {xs[seg] + w * (xs[seg + 1] - xs[seg]), ys[seg] + w * (ys[seg + 1] - ys[seg])};
  }
  return out;
}

namespace {

std::vector<double> timestamps(const Trajectory& traj) {
  std::vector<double> t;
  t.reserve(traj.size());
  for (const auto& s : traj.samples) t.push_back(s.t);
  return t;
}

}  // namespace

NormalizedPath normalize_path(const Trajectory& traj, const Vec3& target_pos, const ResampleOptions& options) {
  if (traj.size() < 2) throw EmptyInput("normalization needs at least 2 samples");
  const Vec3 origin = traj.samples.front().hand;
  if ((target_pos - origin).norm() < 1e-6) throw DegeneratePath("start and target coincide");
  const Vec3 chord = traj.samples.back().hand - origin;
  const double scale = chord.norm();
  if (scale < 1e-6) throw DegeneratePath("path ends where it starts");
  const Vec3 e1 = chord / scale;

  // In-plane lateral axis: dominant direction of the deviation from the chord.
  Mat3 scatter = Mat3::Zero();
  Vec3 deviation_sum = Vec3::Zero();
  for (const auto& s : traj.samples) {
    const Vec3 r = s.hand - origin;
    const Vec3 lateral = r - r.dot(e1) * e1;
    scatter += lateral * lateral.transpose();
    deviation_sum += lateral;
  }
  Vec3 e2;
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(scatter);
  if (eig.eigenvalues()(2) > 1e-24 * scale * scale * static_cast<double>(traj.size())) {
    e2 = eig.eigenvectors().col(2);
  } else {
    Eigen::Index axis = 0;
    e1.cwiseAbs().minCoeff(&axis);
    e2 = Vec3::Unit(axis);
  }
  e2 = (e2 - e2.dot(e1) * e1).normalized();
  if (deviation_sum.dot(e2) < 0.0) e2 = -e2;

  PathPoints planar;
  planar.reserve(traj.size());
  for (const auto& s : traj.samples) {
    const Vec3 r = s.hand - origin;
    planar.emplace_back(r.dot(e1) / scale, r.dot(e2) / scale);
  }
  planar.front() = Vec2::Zero();
  planar.back() = Vec2(1.0, 0.0);

  const auto t = timestamps(traj);
  return {PathKind::Hand, resample_uniform(t, planar, options), {}};
}

NormalizedPath resample_joint_path(const Trajectory& traj, const ResampleOptions& options) {
  if (traj.size() < 2) throw EmptyInput("resampling needs at least 2 samples");
  PathPoints q;
  q.reserve(traj.size());
  for (const auto& s : traj.samples) q.emplace_back(s.joint.q_s, s.joint.q_e);
  const auto t = timestamps(traj);
  return {PathKind::Joint, resample_uniform(t, q, options), {}};
}

}  // namespace reachsim
