#include "doctest.h"

#include "reachsim/config.hpp"

#include <numbers>

using namespace reachsim;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.sim.rate_hz == 90.0);
  CHECK(c.sim.synergy.theta == 1.0);
  CHECK(c.arm.elbow_min == doctest::Approx(5 * std::numbers::pi / 180));
  CHECK(c.arm.elbow_max == doctest::Approx(140 * std::numbers::pi / 180));
  CHECK(c.analysis.omega_c == 40.0);
  CHECK(c.analysis.resample.samples == 200);
  CHECK(c.seed == 0);
  CHECK(c.task.iterations == 10);
  CHECK(c.modalities.size() == 3);
  CHECK(c.run_targets == std::vector<std::string>{"Close", "Mid", "Far", "High"});
  CHECK_FALSE(c.ab_label().has_value());
}

TEST_CASE("defaults dump parses back to the defaults") {
  const std::string text = default_config_text();
  const RunConfig c = parse_config(text);
  const RunConfig d;
  CHECK(describe_config(c) == describe_config(d));
  for (const char* literal : {"rate_hz = 90\n", "theta = 1\n", "omega_c = 40\n", "samples = 200\n",
                              "elbow_min_deg = 5\n", "elbow_max_deg = 140\n", "Start = 0.5*l, 0.5*h, 0\n",
                              "Close = 0.75*l, 0.65*h, 0.12\n", "Mid = 1.0*l, 0.65*h, -0.12\n",
                              "Far = 1.5*l, 0.65*h, 0\n", "High = 1.0*l, 0.9*h, 0\n"}) {
    CAPTURE(literal);
    CHECK(text.find(literal) != std::string::npos);
  }
}

TEST_CASE("resolved targets") {
  const RunConfig c = parse_config("[task]\nheight = 1.8\narm_length = 0.7\n");
  const std::string d = describe_config(c);
  CHECK(d.find("Far = 1.05, 1.17, 0\n") != std::string::npos);
  CHECK(d.find("High = 0.7, 1.62, 0\n") != std::string::npos);
  const RunConfig tall = parse_config("[task]\nheight = 2.0\narm_length = 0.8\n");
  CHECK((tall.task.target("Far") - Vec3(1.2, 1.3, 0)).norm() < 1e-12);
}

TEST_CASE("custom targets and overrides") {
  const RunConfig c = parse_config(
      "[task]\ntargets = Far, Shelf\niterations = 3\n"
      "[targets]\nShelf = 1.2*l, 0.8*h, 0.05\nFar = 1.4*l, 0.65*h, 0\n"
      "[controllers]\nlist = AB, TS\n"
      "[sim]\nrate_hz = 120\njitter_sigma = 0\n"
      "[run]\nseed = 12\nout_dir = somewhere\n"
      "[analysis]\ntask_time = median\npath_difference = mean\nanti_alias = false\n");
  CHECK((c.task.target("Shelf") - Vec3(0.84, 1.44, 0.05)).norm() < 1e-12);
  CHECK(c.task.target("Far").x() == doctest::Approx(0.98));
  CHECK(c.task.iterations == 3);
  CHECK(c.ab_label() == std::optional<std::string>("AB"));
  CHECK(c.sim.rate_hz == 120.0);
  CHECK(c.seed == 12);
  CHECK(c.out_dir == "somewhere");
  CHECK(c.analysis.task_time == TaskTimeStatistic::Median);
  CHECK(c.analysis.difference == PathDifferenceForm::Mean);
  CHECK_FALSE(c.analysis.resample.anti_alias);
}

TEST_CASE("config errors") {
  CHECK(error_of("[task]\ntargets = Far, Attic\n").find("Attic") != std::string::npos);
  CHECK(error_of("[task]\narm_length = 0\n").find("arm_length") != std::string::npos);
  CHECK(error_of("[sim]\nrate = 90\n").find("sim.rate") != std::string::npos);
  CHECK(error_of("[physics]\ng = 9.81\n").find("physics") != std::string::npos);
  CHECK(error_of("[sim]\nrate_hz = fast\n").find("fast") != std::string::npos);
  CHECK(error_of("[controllers]\nlist = TS, XY\n").find("XY") != std::string::npos);
  CHECK(error_of("[targets]\nShelf = 1, 2\n").find("Shelf") != std::string::npos);
  CHECK(error_of("[targets]\nShelf = 1*q, 2, 0\n").find("Shelf") != std::string::npos);
  CHECK(error_of("[analysis]\ntask_time = mode\n").find("mode") != std::string::npos);
  CHECK(error_of("[arm]\nelbow_min_deg = 150\n") != "");
  CHECK(error_of("this is not ini") != "");
  CHECK_THROWS_AS(load_config("/nonexistent/reachsim.ini"), ConfigError);
}
