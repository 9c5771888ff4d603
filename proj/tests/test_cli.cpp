#include "doctest.h"

#include "reachsim/column_map.hpp"
#include "reachsim/commands.hpp"
#include "reachsim/manifest.hpp"
#include "support.hpp"

#include "json.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace reachsim;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  os << text;
}

Run cli(const std::string& args) {
  const fs::path dir = fs::path(REACHSIM_TEST_TMP);
  fs::create_directories(dir);
  const auto out = dir / "cli_stdout.txt";
  const auto err = dir / "cli_stderr.txt";
  const std::string cmd = std::string(REACHSIM_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return files;
}

fs::path small_config(const fs::path& dir) {
  const auto cfg = dir / "small.ini";
  spit(cfg, "[task]\ntargets = Far, High\niterations = 3\n[controllers]\nlist = AB, TS, JS\n");
  return cfg;
}

}  // namespace

TEST_CASE("print-defaults and validate") {
  const auto dir = testsupport::fresh_dir("cli_validate");
  const Run d = cli("--print-defaults");
  CHECK(d.code == 0);
  CHECK(d.out.find("rate_hz = 90\n") != std::string::npos);
  CHECK(d.out.find("Far = 1.5*l, 0.65*h, 0\n") != std::string::npos);

  spit(dir / "default.ini", d.out);
  const Run v = cli("validate " + (dir / "default.ini").string());
  CHECK(v.code == 0);
  CHECK(v.out.find("Far = 1.05, 1.17, 0\n") != std::string::npos);
  CHECK(v.out.find("theta = 1\n") != std::string::npos);

  spit(dir / "zero.ini", "[task]\narm_length = 0\n");
  const Run z = cli("validate " + (dir / "zero.ini").string());
  CHECK(z.code == 2);
  CHECK(z.err.find("arm_length") != std::string::npos);

  CHECK(cli("validate " + (dir / "missing.ini").string()).code == 2);
  CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("simulate twice with the same seed gives identical trees") {
  const auto dir = testsupport::fresh_dir("cli_determinism");
  const auto cfg = small_config(dir);
  const Run a = cli("simulate " + cfg.string() + " --seed 0 --out " + (dir / "a").string());
  const Run b = cli("simulate " + cfg.string() + " --seed 0 --out " + (dir / "b").string());
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  const auto ta = tree(dir / "a");
  CHECK(ta.contains("manifest.json"));
  CHECK(ta.contains("report.json"));
  CHECK(ta.contains("plots/summary.csv"));
  CHECK(ta.size() == 18 + 3 + 2 * 6);
  CHECK(ta == tree(dir / "b"));
  const Run c = cli("simulate " + cfg.string() + " --seed 1 --out " + (dir / "c").string());
  CHECK(c.code == 0);
  CHECK(tree(dir / "c") != ta);
}

TEST_CASE("unknown target exits 2 naming it") {
  const auto dir = testsupport::fresh_dir("cli_unknown");
  spit(dir / "bad.ini", "[task]\ntargets = Far, Attic\n");
  const Run r = cli("simulate " + (dir / "bad.ini").string() + " --out " + (dir / "out").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("Attic") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("keep-going with a singular TS iteration") {
  const auto dir = testsupport::fresh_dir("cli_singular");
  spit(dir / "sing.ini", testsupport::singular_ts_config());
  const Run strict = cli("simulate " + (dir / "sing.ini").string() + " --out " + (dir / "strict").string());
  CHECK(strict.code == 4);
  const Run lenient =
      cli("simulate " + (dir / "sing.ini").string() + " --keep-going --out " + (dir / "lenient").string());
  CHECK(lenient.code == 0);
  const auto m = read_manifest(dir / "lenient" / "manifest.json");
  REQUIRE(m.files.size() == 1);
  CHECK(m.files[0].flags.singularity_hit);
}

TEST_CASE("I/O failure exits 3") {
  const auto dir = testsupport::fresh_dir("cli_io");
  const auto cfg = small_config(dir);
  spit(dir / "blocker", "not a directory");
  const Run r = cli("simulate " + cfg.string() + " --out " + (dir / "blocker" / "out").string());
  CHECK(r.code == 3);
}

TEST_CASE("analyze a simulated batch") {
  const auto dir = testsupport::fresh_dir("cli_analyze");
  const auto cfg = small_config(dir);
  REQUIRE(cli("simulate " + cfg.string() + " --out " + (dir / "run").string()).code == 0);
  const Run r = cli("analyze " + (dir / "run").string() + " --ab AB");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "run" / "analysis" / "report.json"));
  CHECK(j["ab_label"] == "AB");
  CHECK(j["cells"].size() == 6);
  for (const auto& c : j["cells"]) {
    for (const char* k : {"t_f_central", "terminal_error_mean", "sal_hand", "sal_joint", "var_hand", "var_joint",
                          "disp_c7", "disp_shoulder"}) {
      CHECK(c[k].is_number());
    }
    if (c["controller"] != "AB") {
      CHECK(c["diff_hand"].is_number());
      CHECK(c["diff_joint"].is_number());
    }
  }
  // The report written by simulate and the one from analyze agree.
  CHECK(slurp(dir / "run" / "analysis" / "report.json") == slurp(dir / "run" / "report.json"));

  const Run no_ab = cli("analyze " + (dir / "run").string() + " --ab Healthy");
  CHECK(no_ab.code == 0);
  CHECK(no_ab.err.find("warning") != std::string::npos);
}

TEST_CASE("analyze input errors") {
  const auto dir = testsupport::fresh_dir("cli_analyze_errors");
  fs::create_directories(dir / "empty");
  CHECK(cli("analyze " + (dir / "empty").string()).code == 2);
  CHECK(cli("analyze " + (dir / "missing").string()).code == 2);
  fs::create_directories(dir / "loose");
  spit(dir / "loose" / "x.csv", "a,b\n1,2\n");
  CHECK(cli("analyze " + (dir / "loose").string()).code == 2);
}

TEST_CASE("external data in degrees and millimetres matches pre-converted data") {
  const auto dir = testsupport::fresh_dir("cli_colmap");
  const auto spec = TaskSpec::standard(1.8, 0.7);
  BatchOptions opts;
  opts.modalities = {Modality::JS, Modality::EP};
  opts.targets = {"Far", "High"};
  auto s = spec;
  s.iterations = 3;
  const auto results = run_batch(s, ArmConfig{}, SimParams{}, opts, dir / "sim");

  fs::create_directories(dir / "si");
  fs::create_directories(dir / "mocap");
  const double rad_to_deg = 180.0 / std::numbers::pi;
  for (const auto& r : results) {
    const std::string name = r.label + "_" + r.target + "_" + std::to_string(r.iteration) + ".csv";
    std::ostringstream si, mocap;
    si << "Time,Shoulder,Elbow,HX,HY,HZ\n";
    mocap << "HZ,HY,HX,Elbow,Shoulder,Time\n";
    char buf[256];
    for (const auto& p : r.trajectory.samples) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.t, p.joint.q_s, p.joint.q_e,
                    p.hand.x(), p.hand.y(), p.hand.z());
      si << buf;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.hand.z() * 1000,
                    p.hand.y() * 1000, p.hand.x() * 1000, p.joint.q_e * rad_to_deg, p.joint.q_s * rad_to_deg, p.t);
      mocap << buf;
    }
    spit(dir / "si" / name, si.str());
    spit(dir / "mocap" / name, mocap.str());
  }
  const std::string columns =
      "[columns]\nt = Time\nhand_x = HX\nhand_y = HY\nhand_z = HZ\nq_s = Shoulder\nq_e = Elbow\n";
  spit(dir / "si.ini", columns + "[units]\nangle = rad\nlength = m\n[targets]\nFar = 1.05, 1.17, 0\nHigh = 0.7, 1.62, 0\n");
  spit(dir / "mocap.ini",
       columns + "[units]\nangle = deg\nlength = mm\n[targets]\nFar = 1050, 1170, 0\nHigh = 700, 1620, 0\n");

  CHECK(cli("analyze " + (dir / "si").string() + " --colmap " + (dir / "si.ini").string()).code == 0);
  CHECK(cli("analyze " + (dir / "mocap").string() + " --colmap " + (dir / "mocap.ini").string()).code == 0);
  const auto a = nlohmann::json::parse(slurp(dir / "si" / "analysis" / "report.json"));
  const auto b = nlohmann::json::parse(slurp(dir / "mocap" / "analysis" / "report.json"));
  REQUIRE(a["cells"].size() == 4);
  REQUIRE(b["cells"].size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& ca = a["cells"][i];
    const auto& cb = b["cells"][i];
    CHECK(ca["controller"] == cb["controller"]);
    CHECK(ca["target"] == cb["target"]);
    for (const char* k : {"t_f_central", "terminal_error_mean", "sal_hand", "sal_joint", "var_hand", "var_joint"}) {
      CAPTURE(k);
      CHECK(cb[k].get<double>() == doctest::Approx(ca[k].get<double>()).epsilon(1e-9));
    }
  }

  spit(dir / "partial.ini", "[columns]\nt = Time\nhand_x = HX\n");
  CHECK(cli("analyze " + (dir / "si").string() + " --colmap " + (dir / "partial.ini").string()).code == 2);
  spit(dir / "units.ini", columns + "[units]\nangle = grad\n");
  CHECK(cli("analyze " + (dir / "si").string() + " --colmap " + (dir / "units.ini").string()).code == 2);
}

TEST_CASE("library entry points") {
  const auto dir = testsupport::fresh_dir("cli_library");
  std::ostringstream out, err;
  CHECK(cmd_print_defaults(out) == kExitOk);
  spit(dir / "c.ini", out.str());
  std::ostringstream vout;
  CHECK(cmd_validate(dir / "c.ini", vout, err) == kExitOk);
  CHECK(vout.str().find("Close = 0.525, 1.17, 0.12") != std::string::npos);
}
