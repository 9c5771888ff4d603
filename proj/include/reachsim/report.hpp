/**
 * @file report.hpp
 * @brief Per controller x target aggregation of all metrics, with JSON and
 *        plot-data CSV output.
 */
#pragma once

#include "reachsim/analysis.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace reachsim {

struct AnalysisParams {
  double omega_c = kDefaultOmegaC;
  ResampleOptions resample;
  TaskTimeStatistic task_time = TaskTimeStatistic::Mean;
  PathDifferenceForm difference = PathDifferenceForm::Sum;
};

struct CellMetrics {
  std::string label;
  std::string target;
  std::size_t iterations = 0;  ///< iterations that entered the metrics
  std::size_t skipped = 0;     ///< iterations without usable samples
  double t_f_central = 0.0;          ///< [s]
  double terminal_error_mean = 0.0;  ///< [m]
  double sal_hand = 0.0;
  double sal_joint = 0.0;
  std::optional<double> var_hand;   ///< unitless
  std::optional<double> var_joint;  ///< [rad]
  std::optional<double> diff_hand;
  std::optional<double> diff_joint;
  double disp_c7 = 0.0;        ///< [m]
  double disp_shoulder = 0.0;  ///< [m]

  // Plot data, not serialized into the JSON report.
  PathPoints hand_mean, hand_std, joint_mean, joint_std;
};

struct MetricsReport {
  AnalysisParams params;
  std::optional<std::string> ab_label;
  std::vector<CellMetrics> cells;
  std::vector<std::string> warnings;

  const CellMetrics* find(std::string_view label, std::string_view target) const;
};

/// Groups results by (label, target) in order of first appearance and
/// computes every metric. When `ab_label` names a present modality, the
/// other cells of the same target get path differences against it; cells
/// without a reference keep those fields absent.
MetricsReport aggregate_report(std::span<const IterationResult> results, const AnalysisParams& params = {},
                               const std::optional<std::string>& ab_label = std::nullopt);

std::string report_to_json(const MetricsReport& report);

/// Writes report.json and plots/*.csv under dir.
void write_report(const std::filesystem::path& dir, const MetricsReport& report);

}  // namespace reachsim
