#include "reachsim/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace reachsim {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    return parse_number(trim(value));
  } catch (const std::invalid_argument&) {
    throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  const auto v = trim(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("'" + key + "' expects true/false, got '" + value + "'");
}

double parse_coordinate(const std::string& key, const std::string& expr, double height, double arm_length) {
  const auto e = trim(expr);
  if (e.size() > 2 && e[e.size() - 2] == '*') {
    const char unit = e.back();
    const double k = to_double(key, e.substr(0, e.size() - 2));
    if (unit == 'l') return k * arm_length;
    if (unit == 'h') return k * height;
    throw ConfigError("'" + key + "': unknown scale '" + std::string(1, unit) + "' (use l or h)");
  }
  return to_double(key, e);
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"arm", {"upper_len", "lower_len", "elbow_min_deg", "elbow_max_deg"}},
      {"task", {"height", "arm_length", "targets", "iterations"}},
      {"targets", {}},
      {"controllers", {"list"}},
      {"synergy", {"theta", "epsilon_cse", "qdot_max"}},
      {"activation", {"threshold", "gain"}},
      {"sim", {"rate_hz", "timeout", "stop_speed", "stop_radius", "jitter_sigma"}},
      {"script",
       {"ab_duration", "ts_aim_duration", "ts_reach_duration", "ts_shoulder_offset_deg", "js_duration", "js_enable_time",
        "ep_shoulder_duration", "ep_elbow_duration", "correction_duration", "final_elbow_min_deg"}},
      {"analysis", {"omega_c", "samples", "anti_alias", "task_time", "path_difference"}},
      {"run", {"seed", "threads", "out_dir"}},
  };
  return keys;
}

}  // namespace

void RunConfig::validate() const {
  try {
    arm.validate();
    task.validate();
    sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& t : run_targets) {
    if (!task.has_target(t)) throw ConfigError("unknown target '" + t + "'");
    if (t == "Start") throw ConfigError("'Start' is the object start position, not a reach target");
  }
  if (run_targets.empty()) throw ConfigError("task.targets is empty");
  if (modalities.empty()) throw ConfigError("controllers.list is empty");
  if (!(analysis.omega_c > 0.0)) throw ConfigError("analysis.omega_c must be > 0");
  if (analysis.resample.samples < 2) throw ConfigError("analysis.samples must be >= 2");
}

std::optional<std::string> RunConfig::ab_label() const {
  if (std::find(modalities.begin(), modalities.end(), Modality::AB) != modalities.end()) return "AB";
  return std::nullopt;
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }

  for (const auto& [section, body] : tree) {
    const auto it = allowed_keys().find(section);
    if (it == allowed_keys().end()) throw ConfigError("unknown config section [" + section + "]");
    if (section == "targets") continue;
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) throw ConfigError("unknown key '" + section + "." + key + "'");
    }
  }

  RunConfig cfg;
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return *v;
    return std::nullopt;
  };
  auto num = [&](const std::string& path, double& field) {
    if (auto v = get(path)) field = to_double(path, *v);
  };
  auto deg = [&](const std::string& path, double& field) {
    if (auto v = get(path)) field = to_double(path, *v) * kDegToRad;
  };

  num("arm.upper_len", cfg.arm.upper_len);
  num("arm.lower_len", cfg.arm.lower_len);
  deg("arm.elbow_min_deg", cfg.arm.elbow_min);
  deg("arm.elbow_max_deg", cfg.arm.elbow_max);

  double height = 1.8;
  double arm_length = 0.7;
  num("task.height", height);
  num("task.arm_length", arm_length);
  cfg.task = TaskSpec::standard(height, arm_length);
  if (auto v = get("task.iterations")) cfg.task.iterations = static_cast<int>(to_double("task.iterations", *v));
  if (auto v = get("task.targets")) cfg.run_targets = split_list(*v);

  if (auto targets = tree.get_child_optional("targets")) {
    for (const auto& [name, value] : *targets) {
      const auto coords = split_list(value.data());
      const std::string key = "targets." + name;
      if (coords.size() != 3) throw ConfigError("'" + key + "' expects three coordinates");
      const Vec3 pos(parse_coordinate(key, coords[0], height, arm_length),
                     parse_coordinate(key, coords[1], height, arm_length),
                     parse_coordinate(key, coords[2], height, arm_length));
      auto existing = std::find_if(cfg.task.targets.begin(), cfg.task.targets.end(),
                                   [&](const NamedTarget& t) { return t.name == name; });
      if (existing != cfg.task.targets.end()) {
        existing->position = pos;
      } else {
        cfg.task.targets.push_back({name, pos});
      }
    }
  }

  if (auto v = get("controllers.list")) {
    cfg.modalities.clear();
    for (const auto& name : split_list(*v)) {
      try {
        cfg.modalities.push_back(modality_from_string(name));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }

  num("synergy.theta", cfg.sim.synergy.theta);
  num("synergy.epsilon_cse", cfg.sim.synergy.epsilon_cse);
  num("synergy.qdot_max", cfg.sim.synergy.qdot_max);
  num("activation.threshold", cfg.sim.activation.threshold);
  num("activation.gain", cfg.sim.activation.gain);
  num("sim.rate_hz", cfg.sim.rate_hz);
  num("sim.timeout", cfg.sim.timeout);
  num("sim.stop_speed", cfg.sim.stop_speed);
  num("sim.stop_radius", cfg.sim.stop_radius);
  num("sim.jitter_sigma", cfg.sim.jitter_sigma);
  num("script.ab_duration", cfg.sim.script.ab_duration);
  num("script.ts_aim_duration", cfg.sim.script.ts_aim_duration);
  num("script.ts_reach_duration", cfg.sim.script.ts_reach_duration);
  deg("script.ts_shoulder_offset_deg", cfg.sim.script.ts_shoulder_offset);
  num("script.js_duration", cfg.sim.script.js_duration);
  num("script.js_enable_time", cfg.sim.script.js_enable_time);
  num("script.ep_shoulder_duration", cfg.sim.script.ep_shoulder_duration);
  num("script.ep_elbow_duration", cfg.sim.script.ep_elbow_duration);
  num("script.correction_duration", cfg.sim.script.correction_duration);
  deg("script.final_elbow_min_deg", cfg.sim.script.final_elbow_min);

  num("analysis.omega_c", cfg.analysis.omega_c);
  if (auto v = get("analysis.samples")) {
    const double n = to_double("analysis.samples", *v);
    if (!(n >= 2.0) || n != std::floor(n)) throw ConfigError("analysis.samples must be an integer >= 2");
    cfg.analysis.resample.samples = static_cast<std::size_t>(n);
  }
  if (auto v = get("analysis.anti_alias")) cfg.analysis.resample.anti_alias = to_bool("analysis.anti_alias", *v);
  if (auto v = get("analysis.task_time")) {
    const auto s = trim(*v);
    if (s == "mean") cfg.analysis.task_time = TaskTimeStatistic::Mean;
    else if (s == "median") cfg.analysis.task_time = TaskTimeStatistic::Median;
    else throw ConfigError("analysis.task_time must be mean or median, got '" + s + "'");
  }
  if (auto v = get("analysis.path_difference")) {
    const auto s = trim(*v);
    if (s == "sum") cfg.analysis.difference = PathDifferenceForm::Sum;
    else if (s == "mean") cfg.analysis.difference = PathDifferenceForm::Mean;
    else throw ConfigError("analysis.path_difference must be sum or mean, got '" + s + "'");
  }

  if (auto v = get("run.seed")) {
    const double s = to_double("run.seed", *v);
    if (!(s >= 0.0) || s != std::floor(s)) throw ConfigError("run.seed must be a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (auto v = get("run.threads")) cfg.threads = static_cast<unsigned>(to_double("run.threads", *v));
  if (auto v = get("run.out_dir")) cfg.out_dir = trim(*v);

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string fmt(double v) { return format_number(v); }

// Table fractions keep a decimal point: 1.0*l rather than 1*l.
std::string fraction(double v) {
  std::string s = format_number(v);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}
std::string deg_of(double rad) { return format_number(rad / kDegToRad); }

std::string modality_list(const std::vector<Modality>& ms) {
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? ", " : "") + std::string(to_string(ms[i]));
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

std::string common_sections(const RunConfig& c) {
  std::ostringstream os;
  os << "[arm]\n"
     << "upper_len = " << fmt(c.arm.upper_len) << "\n"
     << "lower_len = " << fmt(c.arm.lower_len) << "\n"
     << "elbow_min_deg = " << deg_of(c.arm.elbow_min) << "\n"
     << "elbow_max_deg = " << deg_of(c.arm.elbow_max) << "\n\n"
     << "[task]\n"
     << "height = " << fmt(c.task.height) << "\n"
     << "arm_length = " << fmt(c.task.arm_length) << "\n"
     << "targets = " << join(c.run_targets) << "\n"
     << "iterations = " << c.task.iterations << "\n\n"
     << "[controllers]\n"
     << "list = " << modality_list(c.modalities) << "\n\n"
     << "[synergy]\n"
     << "theta = " << fmt(c.sim.synergy.theta) << "\n"
     << "epsilon_cse = " << fmt(c.sim.synergy.epsilon_cse) << "\n"
     << "qdot_max = " << fmt(c.sim.synergy.qdot_max) << "\n\n"
     << "[activation]\n"
     << "threshold = " << fmt(c.sim.activation.threshold) << "\n"
     << "gain = " << fmt(c.sim.activation.gain) << "\n\n"
     << "[sim]\n"
     << "rate_hz = " << fmt(c.sim.rate_hz) << "\n"
     << "timeout = " << fmt(c.sim.timeout) << "\n"
     << "stop_speed = " << fmt(c.sim.stop_speed) << "\n"
     << "stop_radius = " << fmt(c.sim.stop_radius) << "\n"
     << "jitter_sigma = " << fmt(c.sim.jitter_sigma) << "\n\n"
     << "[script]\n"
     << "ab_duration = " << fmt(c.sim.script.ab_duration) << "\n"
     << "ts_aim_duration = " << fmt(c.sim.script.ts_aim_duration) << "\n"
     << "ts_reach_duration = " << fmt(c.sim.script.ts_reach_duration) << "\n"
     << "ts_shoulder_offset_deg = " << deg_of(c.sim.script.ts_shoulder_offset) << "\n"
     << "js_duration = " << fmt(c.sim.script.js_duration) << "\n"
     << "js_enable_time = " << fmt(c.sim.script.js_enable_time) << "\n"
     << "ep_shoulder_duration = " << fmt(c.sim.script.ep_shoulder_duration) << "\n"
     << "ep_elbow_duration = " << fmt(c.sim.script.ep_elbow_duration) << "\n"
     << "correction_duration = " << fmt(c.sim.script.correction_duration) << "\n"
     << "final_elbow_min_deg = " << deg_of(c.sim.script.final_elbow_min) << "\n\n"
     << "[analysis]\n"
     << "omega_c = " << fmt(c.analysis.omega_c) << "\n"
     << "samples = " << c.analysis.resample.samples << "\n"
     << "anti_alias = " << (c.analysis.resample.anti_alias ? "true" : "false") << "\n"
     << "task_time = " << to_string(c.analysis.task_time) << "\n"
     << "path_difference = " << to_string(c.analysis.difference) << "\n\n"
     << "[run]\n"
     << "seed = " << c.seed << "\n"
     << "threads = " << c.threads << "\n"
     << "out_dir = " << c.out_dir.string() << "\n";
  return os.str();
}

}  // namespace

std::string default_config_text() {
  const RunConfig defaults;
  std::ostringstream os;
  os << "; reachsim defaults (angles in degrees, lengths in meters, rates in Hz, omega_c in rad/s)\n\n"
     << common_sections(defaults) << "\n"
     << "; x = k*l (arm length), y = k*h (height), z in meters\n"
     << "[targets]\n";
  for (const auto& row : kTargetTable) {
    os << row.name << " = " << fraction(row.x_arm_fraction) << "*l, " << fraction(row.y_height_fraction) << "*h, "
       << fmt(row.z) << "\n";
  }
  return os.str();
}

std::string describe_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << common_sections(cfg) << "\n[targets]\n";
  for (const auto& t : cfg.task.targets) {
    os << t.name << " = " << fmt(t.position.x()) << ", " << fmt(t.position.y()) << ", " << fmt(t.position.z())
       << "\n";
  }
  return os.str();
}

}  // namespace reachsim
