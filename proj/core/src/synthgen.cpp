#include "trajeval/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "trajeval/errors.hpp"
#include "trajeval/random.hpp"

namespace trajeval {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PathPoint {
  Vec3 position;
  Vec3 velocity;
};

struct VerticalBob {
  double amplitude = 0.0;
  double cycles = 0.0;
  double phase = 0.0;
};

VerticalBob make_bob(const MotionSpec& spec) {
  if (spec.shape == MotionShape::Line) return {};
  Rng rng(spec.seed);
  VerticalBob bob;
  bob.amplitude = 0.05 * spec.scale;
  bob.cycles = static_cast<double>(rng.uniform_int(1, 3));
  bob.phase = rng.uniform(0.0, kTwoPi);
  return bob;
}

PathPoint evaluate(const MotionSpec& spec, const VerticalBob& bob, double t) {
  const double d = spec.duration;
  const double s = spec.scale;
  const double w = kTwoPi * t / d;
  const double dw = kTwoPi / d;

  const double bob_arg = bob.cycles * w + bob.phase;
  const double z = bob.amplitude * (std::sin(bob_arg) - std::sin(bob.phase));
  const double dz = bob.amplitude * bob.cycles * dw * std::cos(bob_arg);

  switch (spec.shape) {
    case MotionShape::Line:
      return {Vec3(s * t / d, 0.0, 0.0), Vec3(s / d, 0.0, 0.0)};
    case MotionShape::Circle:
      return {Vec3(s * std::sin(w), s * (1.0 - std::cos(w)), z),
              Vec3(s * dw * std::cos(w), s * dw * std::sin(w), dz)};
    case MotionShape::FigureEight:
      return {Vec3(s * std::sin(w), 0.5 * s * std::sin(2.0 * w), z),
              Vec3(s * dw * std::cos(w), s * dw * std::cos(2.0 * w), dz)};
  }
  return {};
}

// Columns: forward (velocity), left, up.
Mat3 heading_frame(const Vec3& velocity, const Mat3& fallback) {
  const double speed = velocity.norm();
  if (speed < 1e-12) return fallback;
  const Vec3 forward = velocity / speed;
  Vec3 left = Vec3::UnitZ().cross(forward);
  if (left.norm() < 1e-9) return fallback;
  left.normalize();
  const Vec3 up = forward.cross(left);
  Mat3 r;
  r.col(0) = forward;
  r.col(1) = left;
  r.col(2) = up;
  return r;
}

struct NoiseDraw {
  Vec3 translation;
  Vec3 axis;
  double angle;
};

NoiseDraw draw_noise(Rng& rng, double sigma_trans, double sigma_rot) {
  NoiseDraw n;
  n.translation = Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian()) * sigma_trans;
  n.axis = Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian());
  if (n.axis.norm() < 1e-12) n.axis = Vec3::UnitZ();
  n.angle = rng.gaussian() * sigma_rot;
  return n;
}

}  // namespace

std::string_view to_string(MotionShape shape) {
  switch (shape) {
    case MotionShape::Line: return "line";
    case MotionShape::Circle: return "circle";
    case MotionShape::FigureEight: return "figure_eight";
  }
  return "unknown";
}

MotionShape parse_motion_shape(std::string_view name) {
  if (name == "line") return MotionShape::Line;
  if (name == "circle") return MotionShape::Circle;
  if (name == "figure_eight" || name == "figure8") return MotionShape::FigureEight;
  throw ValidationError("unknown motion shape '" + std::string(name) + "'");
}

void MotionSpec::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ValidationError("duration must be positive");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ValidationError("rate must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("scale must be positive");
  if (duration * rate > 1e8) throw ValidationError("duration * rate exceeds 1e8 poses");
}

Trajectory generate(const MotionSpec& spec) {
  spec.validate();
  const VerticalBob bob = make_bob(spec);
  const auto count = static_cast<std::size_t>(std::floor(spec.duration * spec.rate + 1e-9)) + 1;

  Trajectory traj;
  traj.source_label = std::string(to_string(spec.shape));
  traj.poses.reserve(count);
  Mat3 heading = Mat3::Identity();
  for (std::size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / spec.rate;
    const PathPoint p = evaluate(spec, bob, t);
    heading = heading_frame(p.velocity, heading);
    traj.poses.emplace_back(t, RigidTransform(heading, p.position));
  }
  return traj;
}

DegradationSpec DegradationSpec::iid_noise(double sigma_trans, double sigma_rot,
                                           std::uint64_t seed) {
  DegradationSpec s;
  s.kind = DegradationKind::IidNoise;
  s.sigma_trans = sigma_trans;
  s.sigma_rot = sigma_rot;
  s.seed = seed;
  return s;
}

DegradationSpec DegradationSpec::random_walk_drift(double sigma_trans, double sigma_rot,
                                                   std::uint64_t seed) {
  DegradationSpec s = iid_noise(sigma_trans, sigma_rot, seed);
  s.kind = DegradationKind::RandomWalkDrift;
  return s;
}

DegradationSpec DegradationSpec::gap(double t0, double t1) {
  DegradationSpec s;
  s.kind = DegradationKind::Gap;
  s.gap_start = t0;
  s.gap_end = t1;
  return s;
}

DegradationSpec DegradationSpec::truncate(double cutoff) {
  DegradationSpec s;
  s.kind = DegradationKind::Truncate;
  s.cutoff = cutoff;
  return s;
}

void DegradationSpec::validate() const {
  switch (kind) {
    case DegradationKind::IidNoise:
    case DegradationKind::RandomWalkDrift:
      if (!(sigma_trans >= 0.0) || !(sigma_rot >= 0.0) || !std::isfinite(sigma_trans) ||
          !std::isfinite(sigma_rot)) {
        throw ValidationError("noise sigmas must be finite and non-negative");
      }
      break;
    case DegradationKind::Gap:
      if (!(gap_start >= 0.0) || !(gap_start < gap_end) || !std::isfinite(gap_end)) {
        throw ValidationError("gap interval must satisfy 0 <= t0 < t1");
      }
      break;
    case DegradationKind::Truncate:
      if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
        throw ValidationError("truncate cutoff must be positive");
      }
      break;
  }
}

Trajectory degrade(const Trajectory& traj, const DegradationSpec& spec) {
  spec.validate();
  Trajectory out;
  out.source_label = traj.source_label;
  out.poses.reserve(traj.size());

  switch (spec.kind) {
    case DegradationKind::IidNoise: {
      Rng rng(spec.seed);
      for (const Pose& p : traj.poses) {
        const NoiseDraw n = draw_noise(rng, spec.sigma_trans, spec.sigma_rot);
        Mat3 r = p.transform.rotation();
        Vec3 t = p.transform.translation();
        if (spec.sigma_trans > 0.0) t += n.translation;
        if (spec.sigma_rot > 0.0) {
          r = (r * RigidTransform::from_axis_angle(n.axis, n.angle).rotation()).eval();
        }
        out.poses.emplace_back(p.timestamp, RigidTransform(r, t));
      }
      break;
    }
    case DegradationKind::RandomWalkDrift: {
      Rng rng(spec.seed);
      RigidTransform drift = RigidTransform::identity();
      bool first = true;
      for (const Pose& p : traj.poses) {
        if (!first) {
          const NoiseDraw n = draw_noise(rng, spec.sigma_trans, spec.sigma_rot);
          const RigidTransform step =
              spec.sigma_rot > 0.0
                  ? RigidTransform::from_axis_angle(n.axis, n.angle, n.translation)
                  : RigidTransform::from_translation(n.translation);
          drift = compose(drift, step);
        }
        first = false;
        out.poses.emplace_back(p.timestamp, compose(drift, p.transform));
      }
      break;
    }
    case DegradationKind::Gap:
      for (const Pose& p : traj.poses) {
        if (p.timestamp < spec.gap_start || p.timestamp > spec.gap_end) out.poses.push_back(p);
      }
      break;
    case DegradationKind::Truncate:
      for (const Pose& p : traj.poses) {
        if (p.timestamp <= spec.cutoff) out.poses.push_back(p);
      }
      break;
  }
  if (out.empty()) {
    throw EmptyTrajectoryError("degradation removed every pose of '" + traj.source_label + "'");
  }
  return out;
}

}  // namespace trajeval
