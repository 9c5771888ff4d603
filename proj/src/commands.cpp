#include "reachsim/commands.hpp"

#include "reachsim/column_map.hpp"
#include "reachsim/config.hpp"
#include "reachsim/manifest.hpp"
#include "reachsim/report.hpp"

#include <ostream>

namespace reachsim {

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(opts.config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out_dir) cfg.out_dir = *opts.out_dir;

  BatchOptions batch;
  batch.modalities = cfg.modalities;
  batch.targets = cfg.run_targets;
  batch.base_seed = cfg.seed;
  batch.threads = cfg.threads;

  std::vector<IterationResult> results;
  try {
    results = run_batch(cfg.task, cfg.arm, cfg.sim, batch, cfg.out_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }

  std::size_t failed = 0;
  for (const auto& r : results) {
    if (!r.failed()) continue;
    ++failed;
    err << (opts.keep_going ? "warning: " : "error: ") << trajectory_file_name(r.modality, r.target, r.iteration)
        << ": " << (r.error ? *r.error : r.flags.singularity_hit ? "singularity" : "timeout") << "\n";
  }

  MetricsReport report;
  try {
    report = aggregate_report(results, cfg.analysis, cfg.ab_label());
    write_report(cfg.out_dir, report);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";

  out << "simulated " << results.size() << " iterations (" << failed << " failed) into " << cfg.out_dir.string()
      << "\n";
  if (failed > 0 && !opts.keep_going) return kExitSimulation;
  return kExitOk;
}

namespace {

std::vector<IterationResult> results_from_manifest(const std::filesystem::path& dir) {
  const BatchManifest m = read_manifest(dir / "manifest.json");
  std::vector<IterationResult> results;
  for (const auto& e : m.files) {
    IterationResult r;
    r.label = e.controller;
    r.target = e.target;
    r.iteration = e.iteration;
    r.seed = e.seed;
    r.t_f = e.t_f;
    r.terminal_error = e.terminal_error;
    r.flags = e.flags;
    r.max_out_of_plane = e.max_out_of_plane;
    r.corrections = e.corrections;
    r.error = e.error;
    const auto t = m.targets.find(e.target);
    if (t == m.targets.end()) throw std::runtime_error("manifest lists no position for target '" + e.target + "'");
    r.target_pos = t->second;
    r.trajectory = read_trajectory_csv(dir / e.file);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  if (!std::filesystem::is_directory(opts.dir, ec)) {
    err << "error: " << opts.dir.string() << " is not a directory\n";
    return kExitConfig;
  }
  if (std::filesystem::is_empty(opts.dir, ec)) {
    err << "error: " << opts.dir.string() << " is empty\n";
    return kExitConfig;
  }

  AnalysisParams params;
  if (opts.config) {
    try {
      params = load_config(*opts.config).analysis;
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << "\n";
      return kExitConfig;
    }
  }

  std::vector<IterationResult> results;
  try {
    if (opts.colmap) {
      ColumnMap map;
      try {
        map = load_column_map(*opts.colmap);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
      }
      results = ingest_external_dir(opts.dir, map);
    } else if (std::filesystem::exists(opts.dir / "manifest.json")) {
      results = results_from_manifest(opts.dir);
    } else {
      err << "error: " << opts.dir.string() << " has no manifest.json; pass --colmap for external data\n";
      return kExitConfig;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  if (results.empty()) {
    err << "error: no trajectories found in " << opts.dir.string() << "\n";
    return kExitConfig;
  }

  const auto out_dir = opts.dir / "analysis";
  try {
    const MetricsReport report = aggregate_report(results, params, opts.ab_label);
    write_report(out_dir, report);
    for (const auto& w : report.warnings) err << "warning: " << w << "\n";
    out << "analyzed " << results.size() << " trajectories in " << report.cells.size() << " cells into "
        << out_dir.string() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load_config(config);
    out << describe_config(cfg);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_print_defaults(std::ostream& out) {
  out << default_config_text();
  return kExitOk;
}

}  // namespace reachsim
