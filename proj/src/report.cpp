#include "reachsim/report.hpp"

#include "json.hpp"

#include <fstream>
#include <map>

namespace reachsim {

using nlohmann::json;

const CellMetrics* MetricsReport::find(std::string_view label, std::string_view target) const {
  for (const auto& c : cells) {
    if (c.label == label && c.target == target) return &c;
  }
  return nullptr;
}

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

MetricsReport aggregate_report(std::span<const IterationResult> results, const AnalysisParams& params,
                               const std::optional<std::string>& ab_label) {
  MetricsReport report;
  report.params = params;
  report.ab_label = ab_label;

  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const IterationResult*>> groups;
  for (const auto& r : results) {
    const auto key = std::make_pair(r.label, r.target);
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(&r);
  }

  std::map<std::pair<std::string, std::string>, std::vector<NormalizedPath>> hand_paths;
  std::map<std::pair<std::string, std::string>, std::vector<NormalizedPath>> joint_paths;

  for (const auto& key : order) {
    CellMetrics cell;
    cell.label = key.first;
    cell.target = key.second;
    std::vector<IterationResult> usable;
    std::vector<double> sal_h, sal_j, c7, sh;
    auto& hands = hand_paths[key];
    auto& joints = joint_paths[key];
    for (const IterationResult* r : groups[key]) {
      const std::string source = r->label + "/" + r->target + "/" + std::to_string(r->iteration);
      // Failed iterations (singular, timed out, errored) stay out of the metrics.
      if (r->failed() || r->trajectory.size() < 2) {
        ++cell.skipped;
        continue;
      }
      try {
        const double s_h = spectral_arc_length(hand_speed_profile(r->trajectory), params.omega_c);
        const double s_j = spectral_arc_length(joint_speed_profile(r->trajectory), params.omega_c);
        NormalizedPath hand = normalize_path(r->trajectory, r->target_pos, params.resample);
        NormalizedPath joint = resample_joint_path(r->trajectory, params.resample);
        hand.source = joint.source = source;
        sal_h.push_back(s_h);
        sal_j.push_back(s_j);
        c7.push_back(upper_body_displacement(r->trajectory, UpperBodyMarker::C7));
        sh.push_back(upper_body_displacement(r->trajectory, UpperBodyMarker::Shoulder));
        hands.push_back(std::move(hand));
        joints.push_back(std::move(joint));
        usable.push_back(*r);
      } catch (const std::exception& e) {
        ++cell.skipped;
        report.warnings.push_back(source + " skipped: " + e.what());
      }
    }
    cell.iterations = usable.size();
    if (usable.empty()) {
      report.warnings.push_back("cell " + cell.label + "/" + cell.target + " has no usable iterations");
      report.cells.push_back(std::move(cell));
      continue;
    }

    cell.t_f_central = task_time(usable, params.task_time);
    cell.terminal_error_mean = terminal_error(usable);
    cell.sal_hand = mean_of(sal_h);
    cell.sal_joint = mean_of(sal_j);
    cell.disp_c7 = mean_of(c7);
    cell.disp_shoulder = mean_of(sh);
    if (hands.size() >= 2) {
      cell.var_hand = path_variability(hands);
      cell.var_joint = path_variability(joints);
    }
    cell.hand_mean = mean_path(hands);
    cell.hand_std = std_band(hands);
    cell.joint_mean = mean_path(joints);
    cell.joint_std = std_band(joints);
    report.cells.push_back(std::move(cell));
  }

  if (ab_label) {
    for (auto& cell : report.cells) {
      if (cell.label == *ab_label || cell.iterations == 0) continue;
      const CellMetrics* ref = report.find(*ab_label, cell.target);
      if (ref == nullptr || ref->iterations == 0) {
        report.warnings.push_back("no " + *ab_label + " reference for target " + cell.target +
                                  "; path differences omitted");
        continue;
      }
      cell.diff_hand = path_difference(ref->hand_mean, cell.hand_mean, params.difference);
      cell.diff_joint = path_difference(ref->joint_mean, cell.joint_mean, params.difference);
    }
  }
  return report;
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string report_to_json(const MetricsReport& report) {
  json j;
  j["format"] = "reachsim-report/1";
  j["analysis"] = {
      {"omega_c", report.params.omega_c},
      {"samples", report.params.resample.samples},
      {"anti_alias", report.params.resample.anti_alias},
      {"anti_alias_filter", "FIR order 5, Kaiser beta 20, cutoff Nyquist/decimation ratio, zero-phase"},
      {"task_time", to_string(report.params.task_time)},
      {"path_difference", to_string(report.params.difference)},
      {"sal_time_base", "original-time speed profiles"},
  };
  j["ab_label"] = report.ab_label ? json(*report.ab_label) : json(nullptr);
  json cells = json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"controller", c.label},
                     {"target", c.target},
                     {"iterations", c.iterations},
                     {"skipped", c.skipped},
                     {"t_f_central", c.t_f_central},
                     {"terminal_error_mean", c.terminal_error_mean},
                     {"sal_hand", c.sal_hand},
                     {"sal_joint", c.sal_joint},
                     {"var_hand", optional_json(c.var_hand)},
                     {"var_joint", optional_json(c.var_joint)},
                     {"diff_hand", optional_json(c.diff_hand)},
                     {"diff_joint", optional_json(c.diff_joint)},
                     {"disp_c7", c.disp_c7},
                     {"disp_shoulder", c.disp_shoulder}});
  }
  j["cells"] = cells;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

std::string band_csv(const MetricsReport& report, const PathPoints& mean, const PathPoints& band,
                     const char* columns) {
  std::string out = "# resampled to " + std::to_string(report.params.resample.samples) + " samples uniform in time; " +
                    (report.params.resample.anti_alias
                         ? "anti-alias FIR order 5, Kaiser beta 20, cutoff Nyquist/decimation ratio, zero-phase\n"
                         : "no anti-alias filter\n");
  out += columns;
  out += '\n';
  for (std::size_t n = 0; n < mean.size(); ++n) {
    out += std::to_string(n) + ',' + format_number(mean[n].x()) + ',' + format_number(mean[n].y()) + ',' +
           format_number(band[n].x()) + ',' + format_number(band[n].y()) + '\n';
  }
  return out;
}

std::string opt_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

void write_report(const std::filesystem::path& dir, const MetricsReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "plots", ec);
  if (ec) throw std::runtime_error("cannot create " + (dir / "plots").string() + ": " + ec.message());
  write_text(dir / "report.json", report_to_json(report));

  std::string summary =
      "controller,target,iterations,t_f_central,terminal_error_mean,sal_hand,sal_joint,var_hand,var_joint,"
      "diff_hand,diff_joint,disp_c7,disp_shoulder\n";
  for (const auto& c : report.cells) {
    summary += c.label + ',' + c.target + ',' + std::to_string(c.iterations) + ',' + format_number(c.t_f_central) +
               ',' + format_number(c.terminal_error_mean) + ',' + format_number(c.sal_hand) + ',' +
               format_number(c.sal_joint) + ',' + opt_field(c.var_hand) + ',' + opt_field(c.var_joint) + ',' +
               opt_field(c.diff_hand) + ',' + opt_field(c.diff_joint) + ',' + format_number(c.disp_c7) + ',' +
               format_number(c.disp_shoulder) + '\n';
    if (c.iterations == 0) continue;
    const std::string stem = c.label + "_" + c.target;
    write_text(dir / "plots" / (stem + "_hand_path.csv"),
               band_csv(report, c.hand_mean, c.hand_std, "n,mean_x,mean_y,std_x,std_y"));
    write_text(dir / "plots" / (stem + "_joint_path.csv"),
               band_csv(report, c.joint_mean, c.joint_std, "n,mean_q_s,mean_q_e,std_q_s,std_q_e"));
  }
  write_text(dir / "plots" / "summary.csv", summary);
}

}  // namespace reachsim
