#include "reachsim/manifest.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace reachsim {

using nlohmann::json;

namespace {

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

}  // namespace

BatchManifest make_manifest(const TaskSpec& spec, const ArmConfig& arm, const SimParams& params,
                            std::uint64_t base_seed, const std::vector<IterationResult>& results) {
  BatchManifest m;
  m.rate_hz = params.rate_hz;
  m.height = spec.height;
  m.arm_length = spec.arm_length;
  m.arm = arm;
  for (const auto& t : spec.targets) m.targets[t.name] = t.position;
  m.base_seed = base_seed;
  m.jitter_sigma = params.jitter_sigma;
  for (const auto& r : results) {
    ManifestEntry e;
    e.file = trajectory_file_name(r.modality, r.target, r.iteration);
    e.controller = r.label;
    e.target = r.target;
    e.iteration = r.iteration;
    e.seed = r.seed;
    e.t_f = r.t_f;
    e.terminal_error = r.terminal_error;
    e.flags = r.flags;
    e.max_out_of_plane = r.max_out_of_plane;
    e.corrections = r.corrections;
    e.error = r.error;
    m.files.push_back(std::move(e));
  }
  return m;
}

std::string manifest_to_json(const BatchManifest& m) {
  json j;
  j["format"] = "reachsim-batch/1";
  j["rate_hz"] = m.rate_hz;
  j["height"] = m.height;
  j["arm_length"] = m.arm_length;
  j["arm"] = {{"upper_len", m.arm.upper_len},
              {"lower_len", m.arm.lower_len},
              {"elbow_min", m.arm.elbow_min},
              {"elbow_max", m.arm.elbow_max}};
  json targets = json::object();
  for (const auto& [name, pos] : m.targets) targets[name] = vec_json(pos);
  j["targets"] = targets;
  j["base_seed"] = m.base_seed;
  j["jitter_sigma"] = m.jitter_sigma;
  json files = json::array();
  for (const auto& e : m.files) {
    files.push_back({{"file", e.file},
                     {"controller", e.controller},
                     {"target", e.target},
                     {"iteration", e.iteration},
                     {"seed", e.seed},
                     {"t_f", e.t_f},
                     {"terminal_error", e.terminal_error},
                     {"flags",
                      {{"singularity_hit", e.flags.singularity_hit},
                       {"range_clamped", e.flags.range_clamped},
                       {"timeout", e.flags.timeout}}},
                     {"max_out_of_plane", e.max_out_of_plane},
                     {"corrections", e.corrections},
                     {"error", e.error ? json(*e.error) : json(nullptr)}});
  }
  j["files"] = files;
  return j.dump(2) + "\n";
}

BatchManifest manifest_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("format", "") != "reachsim-batch/1") throw std::runtime_error("not a reachsim batch manifest");
  BatchManifest m;
  m.rate_hz = j.at("rate_hz").get<double>();
  m.height = j.at("height").get<double>();
  m.arm_length = j.at("arm_length").get<double>();
  const auto& arm = j.at("arm");
  m.arm = {arm.at("upper_len").get<double>(), arm.at("lower_len").get<double>(), arm.at("elbow_min").get<double>(),
           arm.at("elbow_max").get<double>()};
  for (const auto& [name, pos] : j.at("targets").items()) m.targets[name] = vec_from(pos);
  m.base_seed = j.at("base_seed").get<std::uint64_t>();
  m.jitter_sigma = j.at("jitter_sigma").get<double>();
  for (const auto& f : j.at("files")) {
    ManifestEntry e;
    e.file = f.at("file").get<std::string>();
    e.controller = f.at("controller").get<std::string>();
    e.target = f.at("target").get<std::string>();
    e.iteration = f.at("iteration").get<int>();
    e.seed = f.at("seed").get<std::uint64_t>();
    e.t_f = f.at("t_f").get<double>();
    e.terminal_error = f.at("terminal_error").get<double>();
    const auto& flags = f.at("flags");
    e.flags = {flags.at("singularity_hit").get<bool>(), flags.at("range_clamped").get<bool>(),
               flags.at("timeout").get<bool>()};
    e.max_out_of_plane = f.value("max_out_of_plane", 0.0);
    e.corrections = f.value("corrections", 0);
    if (f.contains("error") && !f.at("error").is_null()) e.error = f.at("error").get<std::string>();
    m.files.push_back(std::move(e));
  }
  return m;
}

void write_manifest(const std::filesystem::path& path, const BatchManifest& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << manifest_to_json(m);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

BatchManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    return manifest_from_json(ss.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace reachsim
