#pragma once

// Seeded fixture builders shared by the unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "trajeval/association.hpp"
#include "trajeval/geometry.hpp"
#include "trajeval/trajectory_io.hpp"

namespace fixtures {

using trajeval::Quaternion;
using trajeval::RigidTransform;
using trajeval::Vec3;

// Uniform random unit quaternion (Shoemake), drawn from std::mt19937_64 so the
// fixtures do not depend on the library's own generator.
inline Quaternion random_quaternion(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double u1 = u(gen), u2 = u(gen), u3 = u(gen);
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double tau = 2.0 * std::numbers::pi;
  return {a * std::sin(tau * u2), a * std::cos(tau * u2), b * std::sin(tau * u3),
          b * std::cos(tau * u3)};
}

inline Vec3 random_vec(std::mt19937_64& gen, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  const double x = u(gen), y = u(gen), z = u(gen);
  return {x, y, z};
}

inline RigidTransform random_transform(std::mt19937_64& gen, double half_width = 5.0) {
  const Quaternion q = random_quaternion(gen);
  return {q, random_vec(gen, half_width)};
}

inline trajeval::Trajectory random_trajectory(std::uint64_t seed, std::size_t n,
                                              double rate = 30.0) {
  std::mt19937_64 gen(seed);
  trajeval::Trajectory traj;
  traj.poses.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    traj.poses.emplace_back(100.0 + double(k) / rate, random_transform(gen));
  }
  return traj;
}

inline trajeval::MatchedPairs pair_up(const trajeval::Trajectory& gt,
                                      const trajeval::Trajectory& est) {
  trajeval::MatchedPairs mp;
  for (std::size_t k = 0; k < gt.size(); ++k) mp.pairs.push_back({gt.poses[k], est.poses[k]});
  return mp;
}

inline oracle::M4 to_m4(const RigidTransform& t) {
  const Quaternion q = t.quaternion();
  const auto r = oracle::quat_rotation(q.x(), q.y(), q.z(), q.w());
  return oracle::make(r, {t.translation().x(), t.translation().y(), t.translation().z()});
}

inline std::vector<oracle::M4> to_m4(const trajeval::Trajectory& traj) {
  std::vector<oracle::M4> out;
  for (const auto& p : traj.poses) out.push_back(to_m4(p.transform));
  return out;
}

// Fresh, empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("trajeval_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
