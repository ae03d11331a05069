#pragma once

#include <cstdint>
#include <string_view>

#include "trajeval/trajectory_io.hpp"

namespace trajeval {

enum class MotionShape { Line, Circle, FigureEight };

std::string_view to_string(MotionShape shape);
/// Throws ValidationError for unknown names ("line", "circle", "figure_eight").
MotionShape parse_motion_shape(std::string_view name);

struct MotionSpec {
  MotionShape shape = MotionShape::Line;
  double duration = 10.0;  // s
  double rate = 30.0;      // Hz
  double scale = 1.0;      // m
  std::uint64_t seed = 0;

  void validate() const;
};

/// Samples an analytic path at `rate` Hz from t = 0 to t = duration
/// (floor(duration * rate) + 1 poses, t_k = k / rate).
///
///   line          (scale * t / duration, 0, 0)
///   circle        radius `scale`, one revolution, starting at the origin
///                 heading +x
///   figure_eight  (scale sin(w), scale/2 sin(2w)), one period
///
/// The body x-axis points along the velocity, z-axis stays as close to world
/// up as possible. For circle and figure_eight the seed picks a small
/// vertical bob (amplitude 5 % of scale, 1-3 whole cycles, random phase), so
/// the path still closes its loop; line ignores the seed.
Trajectory generate(const MotionSpec& spec);

enum class DegradationKind { IidNoise, RandomWalkDrift, Gap, Truncate };

struct DegradationSpec {
  DegradationKind kind = DegradationKind::IidNoise;
  double sigma_trans = 0.0;  // m (per pose, or per step for drift)
  double sigma_rot = 0.0;    // rad
  double gap_start = 0.0;    // s
  double gap_end = 0.0;      // s
  double cutoff = 0.0;       // s
  std::uint64_t seed = 0;

  static DegradationSpec iid_noise(double sigma_trans, double sigma_rot,
                                   std::uint64_t seed = 0);
  static DegradationSpec random_walk_drift(double sigma_trans, double sigma_rot,
                                           std::uint64_t seed = 0);
  static DegradationSpec gap(double t0, double t1);
  static DegradationSpec truncate(double cutoff);

  void validate() const;
};

/// Applies one degradation. Timestamps of surviving poses are never touched.
///
///   iid_noise          independently per pose: translation += N(0, sigma_trans^2 I),
///                      rotation R -> R * Rot(uniform axis, N(0, sigma_rot^2))
///   random_walk_drift  W_k * pose_k with W_0 = I and
///                      W_k = W_{k-1} * (Rot(axis, angle), N(0, sigma_trans^2 I)),
///                      the step drawn like the iid noise, so
///                      the error accumulates along the trajectory
///   gap                drops poses with t in [gap_start, gap_end]
///   truncate           drops poses with t > cutoff
///
/// Throws EmptyTrajectoryError if nothing survives.
Trajectory degrade(const Trajectory& traj, const DegradationSpec& spec);

}  // namespace trajeval
