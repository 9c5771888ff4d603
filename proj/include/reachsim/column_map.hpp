/**
 * @file column_map.hpp
 * @brief Ingestion of external motion-capture CSV files through a column map.
 *
 * Column map file (INI):
 *
 *   [columns]          ; trajectory field = column name in the external file
 *   t = time
 *   hand_x = HandX
 *   ...
 *   [units]
 *   angle = deg        ; deg | rad
 *   length = mm        ; mm | m
 *   [targets]          ; target positions, in the declared length unit
 *   Far = 1050, 1170, 0
 *
 * Required fields: t, hand_x, hand_y, hand_z, q_s, q_e. Optional: qdot_s,
 * qdot_e, trunk_x/y/z, sh_x/y/z, enabled. Time is in seconds. Files are
 * named <label>_<target>_<iteration>.csv.
 */
#pragma once

#include "reachsim/simulator.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace reachsim {

enum class AngleUnit { Rad, Deg };
enum class LengthUnit { M, Mm };

struct ColumnMap {
  std::map<std::string, std::string> columns;  ///< field -> external column
  AngleUnit angle = AngleUnit::Rad;
  LengthUnit length = LengthUnit::M;
  std::map<std::string, Vec3> targets;  ///< already in meters

  /// Throws std::invalid_argument on unmapped required fields or unknown fields.
  void validate() const;
};

inline constexpr const char* kRequiredColumns[] = {"t", "hand_x", "hand_y", "hand_z", "q_s", "q_e"};

ColumnMap parse_column_map(const std::string& text);
ColumnMap load_column_map(const std::filesystem::path& path);

/// Reads one external file, converting to meters and radians.
Trajectory read_external_csv(std::istream& is, const ColumnMap& map);
Trajectory read_external_csv(const std::filesystem::path& path, const ColumnMap& map);

/// Every <label>_<target>_<iteration>.csv in dir, sorted by file name.
std::vector<IterationResult> ingest_external_dir(const std::filesystem::path& dir, const ColumnMap& map);

}  // namespace reachsim
