#include "reachsim/trajectory.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace reachsim {

double Trajectory::dt() const { return samples.size() < 2 ? 0.0 : samples[1].t - samples[0].t; }

bool operator==(const PlanarJointState& a, const PlanarJointState& b) {
  return a.q_s == b.q_s && a.q_e == b.q_e && a.qdot_s == b.qdot_s && a.qdot_e == b.qdot_e;
}

std::string format_number(double v) {
  std::array<char, 40> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 9);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

double parse_number(std::string_view field) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument("not a number: '" + std::string(field) + "'");
  }
  return v;
}

double quantize(double v) { return parse_number(format_number(v)); }

Vec3 quantize(const Vec3& v) { return {quantize(v.x()), quantize(v.y()), quantize(v.z())}; }

std::vector<std::string_view> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(begin));
      break;
    }
    out.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << kTrajectoryHeader << '\n';
  for (const auto& s : traj.samples) {
    const std::array<double, 14> values{s.t,           s.hand.x(),     s.hand.y(),     s.hand.z(),
                                        s.joint.q_s,   s.joint.q_e,    s.joint.qdot_s, s.joint.qdot_e,
                                        s.trunk.x(),   s.trunk.y(),    s.trunk.z(),    s.shoulder.x(),
                                        s.shoulder.y(), s.shoulder.z()};
    for (double v : values) os << format_number(v) << ',';
    os << (s.enabled ? 1 : 0) << ',' << (s.singular ? 1 : 0) << ',' << (s.clamped ? 1 : 0) << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_trajectory_csv(os, traj);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

namespace {

bool parse_flag(std::string_view f) {
  if (f == "0") return false;
  if (f == "1") return true;
  throw std::invalid_argument("flag must be 0 or 1, got '" + std::string(f) + "'");
}

}  // namespace

Trajectory read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("trajectory file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader) throw std::runtime_error("unexpected trajectory header: " + line);

  Trajectory traj;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 17) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 17 fields, got " +
                               std::to_string(f.size()));
    }
    try {
      TrajectorySample s;
      s.t = parse_number(f[0]);
      s.hand = {parse_number(f[1]), parse_number(f[2]), parse_number(f[3])};
      s.joint = {parse_number(f[4]), parse_number(f[5]), parse_number(f[6]), parse_number(f[7])};
      s.trunk = {parse_number(f[8]), parse_number(f[9]), parse_number(f[10])};
      s.shoulder = {parse_number(f[11]), parse_number(f[12]), parse_number(f[13])};
      s.enabled = parse_flag(f[14]);
      s.singular = parse_flag(f[15]);
      s.clamped = parse_flag(f[16]);
      traj.samples.push_back(s);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_trajectory_csv(is);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace reachsim
