#include "trajeval/alignment.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "trajeval/errors.hpp"

namespace trajeval {

namespace {

Vec3 centroid(std::span<const Vec3> pts) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

// Largest distance from the centroid, relative to the cloud's magnitude.
bool collapsed(std::span<const Vec3> pts, const Vec3& c) {
  double spread = 0.0;
  for (const Vec3& p : pts) spread = std::max(spread, (p - c).norm());
  return spread <= 1e-12 * std::max(1.0, c.norm());
}

}  // namespace

AlignmentResult horn_align(std::span<const Vec3> est, std::span<const Vec3> gt) {
  if (est.size() != gt.size()) {
    throw ValidationError("alignment needs equally sized point sets");
  }
  if (est.size() < 2) {
    throw InsufficientDataError("alignment needs at least 2 point pairs, got " +
                                std::to_string(est.size()));
  }
  const Vec3 c_est = centroid(est);
  const Vec3 c_gt = centroid(gt);
  if (collapsed(est, c_est) || collapsed(gt, c_gt)) {
    throw DegenerateGeometryError(
        "all positions coincide; the alignment rotation is unobservable");
  }

  Mat3 cov = Mat3::Zero();
  for (std::size_t i = 0; i < est.size(); ++i) {
    cov += (gt[i] - c_gt) * (est[i] - c_est).transpose();
  }

  const Eigen::JacobiSVD<Mat3> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  Mat3 d = Mat3::Identity();
  if ((u * v.transpose()).determinant() < 0.0) d(2, 2) = -1.0;
  Mat3 r = u * d * v.transpose();
  // Re-project onto SO(3) so the checked constructor sees a clean rotation.
  r = Eigen::Quaterniond(r).normalized().toRotationMatrix();
  const Vec3 t = c_gt - r * c_est;

  AlignmentResult out{RigidTransform(r, t), 0.0, est.size()};
  double sq = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    sq += (gt[i] - out.transform.apply(est[i])).squaredNorm();
  }
  out.residual_rmse = std::sqrt(sq / static_cast<double>(est.size()));
  return out;
}

AlignmentResult horn_align(const MatchedPairs& pairs) {
  std::vector<Vec3> est;
  std::vector<Vec3> gt;
  est.reserve(pairs.size());
  gt.reserve(pairs.size());
  for (const PosePair& p : pairs.pairs) {
    est.push_back(p.est.transform.translation());
    gt.push_back(p.gt.transform.translation());
  }
  return horn_align(est, gt);
}

}  // namespace trajeval
