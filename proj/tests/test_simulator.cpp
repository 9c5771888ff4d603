#include "doctest.h"

#include "reachsim/analysis.hpp"
#include "reachsim/manifest.hpp"
#include "reachsim/simulator.hpp"
#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace reachsim;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("target table for h = 1.8, l = 0.7") {
  const auto spec = TaskSpec::standard(1.8, 0.7);
  CHECK((spec.target("Start") - Vec3(0.35, 0.9, 0)).norm() < 1e-12);
  CHECK((spec.target("Close") - Vec3(0.525, 1.17, 0.12)).norm() < 1e-12);
  CHECK((spec.target("Mid") - Vec3(0.7, 1.17, -0.12)).norm() < 1e-12);
  CHECK((spec.target("Far") - Vec3(1.05, 1.17, 0)).norm() < 1e-12);
  CHECK((spec.target("High") - Vec3(0.7, 1.62, 0)).norm() < 1e-12);
  CHECK(spec.reach_targets() == std::vector<std::string>{"Close", "Mid", "Far", "High"});
  CHECK(spec.iterations == 10);
  CHECK_THROWS_AS(spec.target("Nowhere"), UnknownTarget);
  CHECK_THROWS_AS(TaskSpec::standard(1.8, 0.0).validate(), std::invalid_argument);
  auto dup = spec;
  dup.targets.push_back({"Far", Vec3::Zero()});
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
}

TEST_CASE("start pose holds the object with the elbow at 90 degrees") {
  const auto spec = TaskSpec::standard(1.8, 0.7);
  const ArmConfig arm;
  const StartPose p = start_pose(spec, arm);
  CHECK(p.q_e == doctest::Approx(std::numbers::pi / 2));
  const auto h = forward_kinematics(arm, p.q_s, p.q_e);
  CHECK((p.shoulder + p.plane * Vec3(h.x, h.y, 0) - spec.target("Start")).norm() < 1e-12);
  CHECK((p.c7 - p.shoulder - kC7Offset).norm() < 1e-12);
}

TEST_CASE("every default script reaches its target without jitter") {
  const auto spec = TaskSpec::standard(1.8, 0.7);
  const ArmConfig arm;
  SimParams params;
  params.jitter_sigma = 0.0;
  for (Modality m : {Modality::AB, Modality::TS, Modality::JS, Modality::EP}) {
    for (const auto& t : spec.reach_targets()) {
      CAPTURE(to_string(m));
      CAPTURE(t);
      const auto script = default_script(spec, arm, params, t, m);
      const auto r = run_iteration(spec, arm, params, t, m, script, 0);
      CHECK_FALSE(r.failed());
      CHECK(r.terminal_error < params.stop_radius);
      CHECK(r.corrections == 0);
      CHECK(r.t_f == r.trajectory.samples.back().t);
      for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
        CHECK(r.trajectory.samples[k].t - r.trajectory.samples[k - 1].t == doctest::Approx(1.0 / 90).epsilon(1e-6));
        CHECK(r.trajectory.samples[k].joint.q_e >= arm.elbow_min);
        CHECK(r.trajectory.samples[k].joint.q_e <= arm.elbow_max);
      }
    }
  }
}

TEST_CASE("JS with theta = 1 lands on Far") {
  const auto spec = TaskSpec::standard(1.8, 0.7);
  const ArmConfig arm;
  const SimParams params;
  const auto script = default_script(spec, arm, params, "Far", Modality::JS);
  for (int i = 0; i < 10; ++i) {
    const auto r = run_iteration(spec, arm, params, "Far", Modality::JS, script, iteration_seed(0, Modality::JS, "Far", i));
    CHECK(r.terminal_error < 0.04);
  }
}

TEST_CASE("disabled controller leaves the elbow where it is") {
  const auto spec = TaskSpec::standard(1.8, 0.7);
  const ArmConfig arm;
  SimParams params;
  params.timeout = 3.0;
  auto script = default_script(spec, arm, params, "Far", Modality::TS);
  script.toggle_times.clear();
  const auto r = run_iteration(spec, arm, params, "Far", Modality::TS, script, 5);
  for (const auto& s : r.trajectory.samples) CHECK(s.joint.q_e == r.trajectory.samples.front().joint.q_e);
  CHECK(r.flags.timeout);
  CHECK(r.t_f == doctest::Approx(3.0));
}

TEST_CASE("TS reach stays on the aim line") {
  for (const char* t : {"Close", "Mid", "Far", "High"}) {
    CAPTURE(t);
    const double coarse = testsupport::ts_line_deviation(testsupport::run_ts(t, 90.0));
    const double fine = testsupport::ts_line_deviation(testsupport::run_ts(t, 180.0));
    CHECK(coarse >= 0.0);
    CHECK(coarse < 1e-3 * 0.7);
    CHECK(coarse / fine >= 1.33);
  }
}

TEST_CASE("singular TS reach is flagged, zeroed and stays in range") {
  auto spec = TaskSpec::standard(1.8, 0.7);
  spec.targets.push_back({"Near", Vec3(0.348, 1.086, 0)});
  ArmConfig arm;
  arm.upper_len = 0.45;
  arm.lower_len = 0.20;
  SimParams params;
  params.jitter_sigma = 0.0;
  params.script.ts_shoulder_offset = -5.0 * kDegToRad;
  const auto script = default_script(spec, arm, params, "Near", Modality::TS);
  const auto r = run_iteration(spec, arm, params, "Near", Modality::TS, script, 0);
  CHECK(r.flags.singularity_hit);
  CHECK(r.failed());
  int flagged = 0;
  for (const auto& s : r.trajectory.samples) {
    CHECK(std::abs(s.joint.qdot_e) <= params.synergy.qdot_max);
    CHECK(s.joint.q_e >= arm.elbow_min);
    CHECK(s.joint.q_e <= arm.elbow_max);
    if (s.singular) {
      ++flagged;
      CHECK(s.joint.qdot_e == 0.0);
    }
  }
  CHECK(flagged > 0);
}

TEST_CASE("batch shape, files and determinism") {
  const auto spec = TaskSpec::standard(1.8, 0.7);
  const ArmConfig arm;
  const SimParams params;
  BatchOptions opts;
  opts.modalities = {Modality::TS, Modality::JS};
  opts.base_seed = 3;
  const auto dir_a = testsupport::fresh_dir("batch_a");
  const auto dir_b = testsupport::fresh_dir("batch_b");
  const auto a = run_batch(spec, arm, params, opts, dir_a);
  opts.threads = 1;
  const auto b = run_batch(spec, arm, params, opts, dir_b);
  CHECK(a.size() == 80);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir_a / "trajectories")) {
    ++files;
    CHECK(slurp(e.path()) == slurp(dir_b / "trajectories" / e.path().filename()));
  }
  CHECK(files == 80);
  CHECK(slurp(dir_a / "manifest.json") == slurp(dir_b / "manifest.json"));
  const auto m = read_manifest(dir_a / "manifest.json");
  CHECK(m.files.size() == 80);
  CHECK(m.base_seed == 3);
  CHECK(m.files[0].file == "trajectories/TS_Close_000.csv");
}

TEST_CASE("zero jitter makes iterations identical") {
  const auto spec = TaskSpec::standard(1.8, 0.7);
  const ArmConfig arm;
  SimParams params;
  params.jitter_sigma = 0.0;
  BatchOptions opts;
  opts.modalities = {Modality::EP};
  opts.targets = {"High"};
  const auto r = run_batch(spec, arm, params, opts, testsupport::fresh_dir("batch_zero"));
  REQUIRE(r.size() == 10);
  std::vector<NormalizedPath> paths;
  for (const auto& x : r) {
    CHECK(x.trajectory.samples == r[0].trajectory.samples);
    paths.push_back(normalize_path(x.trajectory, x.target_pos));
  }
  CHECK(path_variability(paths) == 0.0);
}

TEST_CASE("iteration seeds differ per cell and iteration") {
  CHECK(iteration_seed(0, Modality::TS, "Far", 0) != iteration_seed(0, Modality::TS, "Far", 1));
  CHECK(iteration_seed(0, Modality::TS, "Far", 0) != iteration_seed(0, Modality::JS, "Far", 0));
  CHECK(iteration_seed(0, Modality::TS, "Far", 0) != iteration_seed(1, Modality::TS, "Far", 0));
  CHECK(iteration_seed(0, Modality::TS, "Far", 0) == iteration_seed(0, Modality::TS, "Far", 0));
  CHECK(trajectory_file_name(Modality::EP, "Mid", 7) == "trajectories/EP_Mid_007.csv");
}
