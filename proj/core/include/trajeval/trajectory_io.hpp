#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "trajeval/geometry.hpp"

namespace trajeval {

/// Time-ordered pose sequence. After loading, timestamps are strictly
/// increasing.
struct Trajectory {
  std::vector<Pose> poses;
  std::string source_label;

  std::size_t size() const { return poses.size(); }
  bool empty() const { return poses.empty(); }
  double start_time() const { return poses.front().timestamp; }
  double end_time() const { return poses.back().timestamp; }
  double timespan() const { return empty() ? 0.0 : end_time() - start_time(); }
};

/// Parses the TUM trajectory format:
///
///   # comment
///   timestamp tx ty tz qx qy qz qw
///
/// Blank lines and lines starting with '#' are skipped. Quaternions are
/// normalized. Out-of-order lines are sorted and duplicate timestamps keep
/// their first occurrence; both produce a message in `warnings` if given.
///
/// Throws ParseError (with line number) for malformed lines and
/// EmptyTrajectoryError when no data line is present.
Trajectory parse_tum(std::istream& in, std::string source_label = {},
                     std::vector<std::string>* warnings = nullptr);

/// Throws IoError if the file cannot be opened.
Trajectory load_tum(const std::filesystem::path& path,
                    std::vector<std::string>* warnings = nullptr);

/// Writes a header comment and one line per pose. Every number has at least
/// six decimals and as many more as needed to round-trip exactly;
/// quaternions are written with qw >= 0. Throws IoError on stream failure.
void write_tum(const Trajectory& traj, std::ostream& out);
void save_tum(const Trajectory& traj, const std::filesystem::path& path);

/// Fixed-point text for `value` with at least `min_decimals` digits after
/// the point that parses back to the identical double.
std::string format_fixed(double value, int min_decimals = 6);

}  // namespace trajeval
