#include "trajeval/trajectory_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "trajeval/errors.hpp"

namespace trajeval {

namespace {

constexpr std::size_t kFieldCount = 8;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

double parse_number(std::string_view token, std::size_t line_no,
                    std::size_t field) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line_no, "field " + std::to_string(field + 1) +
                                  " is not a decimal number: '" +
                                  std::string(token.substr(0, 64)) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_no, "field " + std::to_string(field + 1) +
                                  " is not finite");
  }
  return value;
}

Pose parse_line(std::string_view line, std::size_t line_no) {
  const auto fields = split_fields(line);
  if (fields.size() != kFieldCount) {
    throw ParseError(line_no, "expected 8 fields 'timestamp tx ty tz qx qy qz qw', got " +
                                  std::to_string(fields.size()));
  }
  std::array<double, kFieldCount> v{};
  for (std::size_t k = 0; k < kFieldCount; ++k) {
    v[k] = parse_number(fields[k], line_no, k);
  }
  const double qnorm =
      std::sqrt(v[4] * v[4] + v[5] * v[5] + v[6] * v[6] + v[7] * v[7]);
  if (!(qnorm >= 1e-6)) {
    throw ParseError(line_no, "quaternion has (near) zero norm");
  }
  return Pose(v[0], RigidTransform(Quaternion(v[4], v[5], v[6], v[7]),
                                   Vec3(v[1], v[2], v[3])));
}

}  // namespace

Trajectory parse_tum(std::istream& in, std::string source_label,
                     std::vector<std::string>* warnings) {
  Trajectory traj;
  traj.source_label = std::move(source_label);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r\v\f");
    if (first == std::string_view::npos || view[first] == '#') continue;
    traj.poses.push_back(parse_line(view, line_no));
  }
  if (in.bad()) throw IoError("read failure in '" + traj.source_label + "'");
  if (traj.poses.empty()) {
    throw EmptyTrajectoryError("trajectory '" + traj.source_label +
                               "' contains no poses");
  }

  const auto by_time = [](const Pose& a, const Pose& b) {
    return a.timestamp < b.timestamp;
  };
  if (!std::is_sorted(traj.poses.begin(), traj.poses.end(), by_time)) {
    std::stable_sort(traj.poses.begin(), traj.poses.end(), by_time);
    if (warnings) {
      warnings->push_back("'" + traj.source_label +
                          "': poses were not in time order and have been sorted");
    }
  }
  // stable_sort keeps file order among equal stamps, so unique() keeps the
  // first occurrence.
  const auto last = std::unique(
      traj.poses.begin(), traj.poses.end(),
      [](const Pose& a, const Pose& b) { return a.timestamp == b.timestamp; });
  const auto dropped = static_cast<std::size_t>(traj.poses.end() - last);
  if (dropped > 0) {
    traj.poses.erase(last, traj.poses.end());
    if (warnings) {
      warnings->push_back("'" + traj.source_label + "': dropped " +
                          std::to_string(dropped) + " duplicate timestamp(s)");
    }
  }
  return traj;
}

Trajectory load_tum(const std::filesystem::path& path,
                    std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trajectory file '" + path.string() + "'");
  return parse_tum(in, path.string(), warnings);
}

std::string format_fixed(double value, int min_decimals) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 512> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::fixed);
  if (ec != std::errc()) {
    // Only reachable for magnitudes beyond ~1e490; fall back to scientific.
    const auto sci = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), sci.ptr);
  }
  std::string s(buf.data(), ptr);
  const auto dot = s.find('.');
  int decimals = 0;
  if (dot == std::string::npos) {
    s.push_back('.');
  } else {
    decimals = static_cast<int>(s.size() - dot - 1);
  }
  if (decimals < min_decimals) s.append(static_cast<std::size_t>(min_decimals - decimals), '0');
  return s;
}

void write_tum(const Trajectory& traj, std::ostream& out) {
  out << "# timestamp tx ty tz qx qy qz qw\n";
  std::string line;
  for (const Pose& p : traj.poses) {
    const Vec3& t = p.transform.translation();
    const Quaternion q = p.transform.quaternion().canonical();
    line.clear();
    for (double v : {p.timestamp, t.x(), t.y(), t.z(), q.x(), q.y(), q.z(), q.w()}) {
      if (!line.empty()) line.push_back(' ');
      line += format_fixed(v);
    }
    line.push_back('\n');
    out << line;
  }
  out.flush();
  if (!out) throw IoError("failed to write trajectory '" + traj.source_label + "'");
}

void save_tum(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_tum(traj, out);
}

}  // namespace trajeval
