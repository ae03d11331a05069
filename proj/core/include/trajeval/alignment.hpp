#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trajeval/association.hpp"
#include "trajeval/geometry.hpp"

namespace trajeval {

struct AlignmentResult {
  /// Maps estimate coordinates into the ground-truth frame.
  RigidTransform transform;
  /// sqrt(mean ||gt_i - transform(est_i)||^2), equal to the aligned ATE RMSE.
  double residual_rmse = 0.0;
  std::size_t pair_count = 0;
};

/// Closed-form least-squares rigid alignment (Horn's absolute orientation
/// problem, solved through the SVD of the 3x3 cross-covariance as in
/// Umeyama). Finds R, t minimizing sum_i ||gt_i - (R est_i + t)||^2 with
/// det(R) = +1. No scale is estimated.
///
/// Throws InsufficientDataError for fewer than two points and
/// DegenerateGeometryError when either point set collapses to a single
/// location (rotation unobservable). Collinear sets are accepted; the roll
/// about the line is then fixed by the SVD basis.
AlignmentResult horn_align(std::span<const Vec3> est, std::span<const Vec3> gt);

/// Aligns the translation components of the pairs; pose orientations do not
/// enter the objective.
AlignmentResult horn_align(const MatchedPairs& pairs);

}  // namespace trajeval
