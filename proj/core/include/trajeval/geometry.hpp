#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace trajeval {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Unit quaternion stored in TUM order: vector part (x, y, z) first, scalar
/// part (w) last. Eigen's `Quaterniond(w, x, y, z)` constructor uses the
/// opposite order, so always go through this type when reading files.
///
/// The constructor normalizes its input; a norm below 1e-6 is rejected with
/// ValidationError because it almost always means a corrupt data line.
class Quaternion {
 public:
  Quaternion() = default;
  Quaternion(double x, double y, double z, double w);

  static Quaternion identity() { return {}; }

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  double w() const { return w_; }

  /// Same rotation with w >= 0. Only used when serializing.
  Quaternion canonical() const;

  Eigen::Quaterniond to_eigen() const { return {w_, x_, y_, z_}; }

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
  double w_ = 1.0;
};

/// Element of SE(3): x -> R x + t.
class RigidTransform {
 public:
  RigidTransform() = default;
  RigidTransform(const Quaternion& rotation, const Vec3& translation);
  /// Throws ValidationError unless `rotation` is orthonormal with det +1
  /// (tolerance 1e-9).
  RigidTransform(const Mat3& rotation, const Vec3& translation);

  static RigidTransform identity() { return {}; }
  static RigidTransform from_translation(const Vec3& t);
  static RigidTransform from_translation(double x, double y, double z) {
    return from_translation(Vec3(x, y, z));
  }
  /// Rotation by `angle` radians about `axis` (normalized internally).
  static RigidTransform from_axis_angle(const Vec3& axis, double angle,
                                        const Vec3& translation = Vec3::Zero());

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }
  Quaternion quaternion() const;
  Mat4 matrix() const;

  Vec3 apply(const Vec3& p) const { return rotation_ * p + translation_; }

 private:
  struct Unchecked {};
  RigidTransform(Unchecked, const Mat3& r, const Vec3& t)
      : rotation_(r), translation_(t) {}

  friend RigidTransform compose(const RigidTransform&, const RigidTransform&);
  friend RigidTransform inverse(const RigidTransform&);

  Mat3 rotation_ = Mat3::Identity();
  Vec3 translation_ = Vec3::Zero();
};

/// A rigid transform stamped with a finite time in seconds.
struct Pose {
  Pose() = default;
  Pose(double timestamp, const RigidTransform& transform);

  double timestamp = 0.0;
  RigidTransform transform;
};

Mat3 quat_to_rotation(const Quaternion& q);
Quaternion rotation_to_quat(const Mat3& r);

/// Homogeneous product a * b.
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
RigidTransform inverse(const RigidTransform& t);
/// inverse(a) * b, the motion from a to b expressed in a's frame.
RigidTransform relative(const RigidTransform& a, const RigidTransform& b);

double translation_norm(const RigidTransform& t);
/// Rotation angle in [0, pi]: atan2(sin, cos) with cos = clamp((trace(R) - 1) / 2)
/// and sin = |vee(R - R^T)| / 2. Never NaN, and exact near zero.
double rotation_angle(const RigidTransform& t);

inline RigidTransform operator*(const RigidTransform& a,
                                const RigidTransform& b) {
  return compose(a, b);
}

}  // namespace trajeval
