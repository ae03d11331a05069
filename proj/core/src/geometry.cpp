#include "trajeval/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "trajeval/errors.hpp"

namespace trajeval {

namespace {
constexpr double kMinQuaternionNorm = 1e-6;
constexpr double kOrthonormalTolerance = 1e-9;
}  // namespace

Quaternion::Quaternion(double x, double y, double z, double w) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z) ||
      !std::isfinite(w)) {
    throw ValidationError("quaternion has non-finite components");
  }
  const double n = std::sqrt(x * x + y * y + z * z + w * w);
  if (n < kMinQuaternionNorm) {
    throw ValidationError("quaternion norm " + std::to_string(n) +
                          " is too close to zero");
  }
  x_ = x / n;
  y_ = y / n;
  z_ = z / n;
  w_ = w / n;
}

Quaternion Quaternion::canonical() const {
  Quaternion q = *this;
  if (w_ < 0.0) {
    q.x_ = -x_;
    q.y_ = -y_;
    q.z_ = -z_;
    q.w_ = -w_;
  }
  return q;
}

Mat3 quat_to_rotation(const Quaternion& q) {
  const double x = q.x(), y = q.y(), z = q.z(), w = q.w();
  Mat3 r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
      2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
      2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
  return r;
}

Quaternion rotation_to_quat(const Mat3& r) {
  const Eigen::Quaterniond q(r);
  return {q.x(), q.y(), q.z(), q.w()};
}

RigidTransform::RigidTransform(const Quaternion& rotation,
                               const Vec3& translation)
    : rotation_(quat_to_rotation(rotation)), translation_(translation) {
  if (!translation.allFinite()) {
    throw ValidationError("translation has non-finite components");
  }
}

RigidTransform::RigidTransform(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw ValidationError("rigid transform has non-finite entries");
  }
  const double ortho =
      (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = rotation.determinant();
  if (ortho > kOrthonormalTolerance ||
      std::abs(det - 1.0) > kOrthonormalTolerance) {
    throw ValidationError("rotation matrix is not a proper rotation");
  }
}

RigidTransform RigidTransform::from_translation(const Vec3& t) {
  return {Unchecked{}, Mat3::Identity(), t};
}

RigidTransform RigidTransform::from_axis_angle(const Vec3& axis, double angle,
                                               const Vec3& translation) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw ValidationError("rotation axis has zero length");
  const Mat3 r = Eigen::AngleAxisd(angle, axis / n).toRotationMatrix();
  return {Unchecked{}, r, translation};
}

Quaternion RigidTransform::quaternion() const {
  return rotation_to_quat(rotation_);
}

Mat4 RigidTransform::matrix() const {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

Pose::Pose(double t, const RigidTransform& tf) : timestamp(t), transform(tf) {
  if (!std::isfinite(t)) throw ValidationError("pose timestamp is not finite");
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  return {RigidTransform::Unchecked{}, a.rotation_ * b.rotation_,
          a.rotation_ * b.translation_ + a.translation_};
}

RigidTransform inverse(const RigidTransform& t) {
  const Mat3 rt = t.rotation_.transpose();
  return {RigidTransform::Unchecked{}, rt, -(rt * t.translation_)};
}

RigidTransform relative(const RigidTransform& a, const RigidTransform& b) {
  return compose(inverse(a), b);
}

double translation_norm(const RigidTransform& t) {
  return t.translation().norm();
}

double rotation_angle(const RigidTransform& t) {
  // cos from the trace, sin from the skew part. acos alone loses half the
  // digits near zero (an exact identity can come back as 2e-8 rad).
  const Mat3& r = t.rotation();
  const double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  const Vec3 axis(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  const double s = std::min(1.0, 0.5 * axis.norm());
  return std::atan2(s, c);
}

}  // namespace trajeval
