#include "reachsim/column_map.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace reachsim {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields{"t",       "hand_x",  "hand_y",  "hand_z", "q_s",  "q_e",
                                            "qdot_s",  "qdot_e",  "trunk_x", "trunk_y", "trunk_z", "sh_x",
                                            "sh_y",    "sh_z",    "enabled"};
  return fields;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void ColumnMap::validate() const {
  for (const char* f : kRequiredColumns) {
    if (!columns.contains(f)) throw std::invalid_argument(std::string("column map: required field '") + f + "' is not mapped");
  }
  for (const auto& [field, col] : columns) {
    if (!known_fields().contains(field)) throw std::invalid_argument("column map: unknown field '" + field + "'");
    if (col.empty()) throw std::invalid_argument("column map: field '" + field + "' maps to an empty name");
  }
}

ColumnMap parse_column_map(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("column map syntax error: ") + e.what());
  }
  ColumnMap map;
  for (const auto& [section, body] : tree) {
    if (section != "columns" && section != "units" && section != "targets") {
      throw std::invalid_argument("column map: unknown section [" + section + "]");
    }
  }
  if (auto cols = tree.get_child_optional("columns")) {
    for (const auto& [field, value] : *cols) map.columns[field] = trim(value.data());
  }
  if (auto units = tree.get_child_optional("units")) {
    for (const auto& [key, value] : *units) {
      const std::string v = trim(value.data());
      if (key == "angle") {
        if (v == "deg") map.angle = AngleUnit::Deg;
        else if (v == "rad") map.angle = AngleUnit::Rad;
        else throw std::invalid_argument("column map: angle unit must be deg or rad, got '" + v + "'");
      } else if (key == "length") {
        if (v == "mm") map.length = LengthUnit::Mm;
        else if (v == "m") map.length = LengthUnit::M;
        else throw std::invalid_argument("column map: length unit must be mm or m, got '" + v + "'");
      } else {
        throw std::invalid_argument("column map: unknown unit key '" + key + "'");
      }
    }
  }
  const double to_m = map.length == LengthUnit::Mm ? 1e-3 : 1.0;
  if (auto targets = tree.get_child_optional("targets")) {
    for (const auto& [name, value] : *targets) {
      std::vector<double> xyz;
      std::stringstream ss(value.data());
      std::string item;
      while (std::getline(ss, item, ',')) xyz.push_back(parse_number(trim(item)) * to_m);
      if (xyz.size() != 3) throw std::invalid_argument("column map: target '" + name + "' needs x, y, z");
      map.targets[name] = Vec3(xyz[0], xyz[1], xyz[2]);
    }
  }
  map.validate();
  return map;
}

ColumnMap load_column_map(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_column_map(ss.str());
}

Trajectory read_external_csv(std::istream& is, const ColumnMap& map) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("external file is empty");
  const auto header = split_csv_line(line);
  std::map<std::string, std::size_t> index;  // field -> column position
  for (const auto& [field, col] : map.columns) {
    auto it = std::find_if(header.begin(), header.end(), [&](std::string_view h) { return trim(h) == col; });
    if (it == header.end()) throw std::runtime_error("column '" + col + "' (" + field + ") not in header");
    index[field] = static_cast<std::size_t>(it - header.begin());
  }
  const double to_m = map.length == LengthUnit::Mm ? 1e-3 : 1.0;
  const double to_rad = map.angle == AngleUnit::Deg ? kDegToRad : 1.0;

  Trajectory traj;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    auto get = [&](const char* field, double fallback = 0.0) {
      const auto it = index.find(field);
      if (it == index.end()) return fallback;
      if (it->second >= fields.size()) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": missing column for " + field);
      }
      return parse_number(trim(fields[it->second]));
    };
    TrajectorySample s;
    try {
      s.t = get("t");
      s.hand = Vec3(get("hand_x"), get("hand_y"), get("hand_z")) * to_m;
      s.joint.q_s = get("q_s") * to_rad;
      s.joint.q_e = get("q_e") * to_rad;
      s.joint.qdot_s = get("qdot_s") * to_rad;
      s.joint.qdot_e = get("qdot_e") * to_rad;
      s.trunk = Vec3(get("trunk_x"), get("trunk_y"), get("trunk_z")) * to_m;
      s.shoulder = Vec3(get("sh_x"), get("sh_y"), get("sh_z")) * to_m;
      s.enabled = get("enabled") != 0.0;
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    traj.samples.push_back(s);
  }
  return traj;
}

Trajectory read_external_csv(const std::filesystem::path& path, const ColumnMap& map) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_external_csv(is, map);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::vector<IterationResult> ingest_external_dir(const std::filesystem::path& dir, const ColumnMap& map) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<IterationResult> results;
  for (const auto& path : files) {
    // <label>_<target>_<iteration>
    const std::string stem = path.stem().string();
    const auto last = stem.rfind('_');
    const auto mid = last == std::string::npos || last == 0 ? std::string::npos : stem.rfind('_', last - 1);
    if (mid == std::string::npos) throw std::runtime_error(path.string() + ": name is not <label>_<target>_<iteration>");
    IterationResult r;
    r.label = stem.substr(0, mid);
    r.target = stem.substr(mid + 1, last - mid - 1);
    try {
      r.iteration = static_cast<int>(parse_number(stem.substr(last + 1)));
    } catch (const std::invalid_argument&) {
      throw std::runtime_error(path.string() + ": iteration is not a number");
    }
    const auto target = map.targets.find(r.target);
    if (target == map.targets.end()) throw std::runtime_error(path.string() + ": no position for target '" + r.target + "'");
    r.target_pos = target->second;
    r.trajectory = read_external_csv(path, map);
    if (!r.trajectory.empty()) {
      r.t_f = r.trajectory.samples.back().t - r.trajectory.samples.front().t;
      r.terminal_error = (r.target_pos - r.trajectory.samples.back().hand).norm();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace reachsim
