/**
 * @file analysis.hpp
 * @brief Reaching-motion metrics: path normalization and resampling, task
 *        performance, spectral arc length smoothness, path variability,
 *        path difference and upper-body displacement.
 */
#pragma once

#include "reachsim/simulator.hpp"
#include "reachsim/trajectory.hpp"

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace reachsim {

using Vec2 = Eigen::Vector2d;
using PathPoints = std::vector<Vec2>;

class DegeneratePath : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class ZeroSignal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kNormalizedSamples = 200;
inline constexpr int kAntiAliasOrder = 5;
inline constexpr double kAntiAliasKaiserBeta = 20.0;
inline constexpr double kDefaultOmegaC = 40.0;  ///< [rad/s]

enum class PathKind { Hand, Joint };

/// Fixed-length 2D path. Hand paths are spatially normalized (start (0,0),
/// end (1,0), unitless); joint paths hold (q_s, q_e) in radians.
struct NormalizedPath {
  PathKind kind = PathKind::Hand;
  PathPoints samples;
  std::string source;
};

struct ResampleOptions {
  std::size_t samples = kNormalizedSamples;
  bool anti_alias = true;
};

/// Linear-phase low-pass FIR of the given order (order + 1 taps), Kaiser
/// window, cutoff in cycles per sample (0, 0.5]. Unit DC gain.
std::vector<double> design_lowpass_fir(int order, double kaiser_beta, double cutoff);

/// Zero-phase (forward-backward) filtering with point-symmetric padding, so
/// the first and last samples are preserved.
std::vector<double> filtfilt(std::span<const double> taps, std::span<const double> x);

/// Low-pass (optional) and linearly interpolate onto `samples` points
/// uniformly spaced in time between the first and last timestamps.
PathPoints resample_uniform(std::span<const double> times, std::span<const Vec2> points,
                            const ResampleOptions& options = {});

/// Similarity transform of the hand path onto its best-fit plane through the
/// start-end chord, start -> (0,0), end -> (1,0), then resampled.
/// Throws DegeneratePath when start and target (or start and end) are closer
/// than 1e-6 m; EmptyInput with fewer than 2 samples.
NormalizedPath normalize_path(const Trajectory& traj, const Vec3& target_pos, const ResampleOptions& options = {});

/// (q_s, q_e) resampled to the same time grid as normalize_path.
NormalizedPath resample_joint_path(const Trajectory& traj, const ResampleOptions& options = {});

struct SpeedProfile {
  std::vector<double> values;
  double sample_period = 1.0 / 90.0;  ///< [s]
};

/// |d hand / dt| by finite differences (central inside, one-sided at ends).
SpeedProfile hand_speed_profile(const Trajectory& traj);
/// |d(q_s, q_e) / dt| by the same finite differences [rad/s].
SpeedProfile joint_speed_profile(const Trajectory& traj);

inline constexpr std::size_t kMinSpectrumBins = 65536;

/// FFT length used for a profile of n samples.
std::size_t sal_fft_length(std::size_t n);

/// Negative arc length of the normalized magnitude spectrum over [0, omega_c].
/// Throws EmptyInput or ZeroSignal (V(0) = 0).
double spectral_arc_length(const SpeedProfile& profile, double omega_c = kDefaultOmegaC);

/// Integration stage: omega strictly increasing from 0 to omega_c, vhat the
/// normalized magnitude at those frequencies.
double spectral_arc_length_from_spectrum(std::span<const double> omega, std::span<const double> vhat,
                                         double omega_c = kDefaultOmegaC);

enum class TaskTimeStatistic { Mean, Median };
enum class PathDifferenceForm { Sum, Mean };

std::string_view to_string(TaskTimeStatistic s);
std::string_view to_string(PathDifferenceForm f);

/// Central tendency of per-iteration completion times. Throws EmptyInput.
double task_time(std::span<const double> completion_times, TaskTimeStatistic stat = TaskTimeStatistic::Mean);
double task_time(std::span<const IterationResult> results, TaskTimeStatistic stat = TaskTimeStatistic::Mean);

/// Mean distance between the final hand position and the target.
double terminal_error(std::span<const IterationResult> results);

PathPoints mean_path(std::span<const NormalizedPath> paths);
/// Per-sample population standard deviation of each coordinate.
PathPoints std_band(std::span<const NormalizedPath> paths);

/// Mean over samples of sqrt(sum_i |x_i(n) - mean(n)|^2 / I).
/// Throws EmptyInput with fewer than 2 paths, LengthMismatch on unequal lengths.
double path_variability(std::span<const NormalizedPath> paths);

/// Sum (default) or mean over samples of |a(n) - b(n)|.
double path_difference(std::span<const Vec2> a, std::span<const Vec2> b,
                       PathDifferenceForm form = PathDifferenceForm::Sum);

enum class UpperBodyMarker { C7, Shoulder };

/// |p(t_f) - p(0)| of the marker. Throws EmptyInput with fewer than 2 samples.
double upper_body_displacement(const Trajectory& traj, UpperBodyMarker marker);

}  // namespace reachsim
