#pragma once

#include <cstddef>
#include <vector>

#include "trajeval/geometry.hpp"
#include "trajeval/trajectory_io.hpp"

namespace trajeval {

inline constexpr double kDefaultMaxDiff = 0.02;

struct PosePair {
  Pose gt;
  Pose est;
};

/// Ground-truth / estimate correspondences. Every pair satisfies
/// |gt.timestamp + offset - est.timestamp| <= max_diff, no pose is used
/// twice, and pairs are ordered by strictly increasing gt timestamp.
struct MatchedPairs {
  std::vector<PosePair> pairs;
  std::size_t unmatched_gt_count = 0;
  std::size_t unmatched_est_count = 0;
  double max_diff = kDefaultMaxDiff;
  double offset = 0.0;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

/// Greedy nearest-timestamp matching. All candidate couples (i, j) with
/// |t_gt[i] + offset - t_est[j]| <= max_diff are sorted by that difference
/// (ties: smaller gt index, then smaller est index) and accepted while
/// neither side is taken.
///
/// Throws ValidationError for max_diff <= 0 and NoOverlapError when nothing
/// matches.
MatchedPairs associate(const Trajectory& gt, const Trajectory& est,
                       double max_diff = kDefaultMaxDiff, double offset = 0.0);

/// Pose at time `t`: linear in translation, shortest-arc slerp in rotation.
/// Returns the stored pose when `t` equals one of the stamps. Throws
/// InsufficientDataError for fewer than two poses (unless t hits the single
/// stamp) and OutOfRangeError outside [start, end].
Pose interpolate(const Trajectory& traj, double t);

/// Alternative association: the ground truth is interpolated at every
/// estimate stamp (shifted by -offset). An estimate is kept only when the
/// nearest ground-truth stamp lies within max_diff, so gt gaps are never
/// bridged. The interpolated gt pose carries the shifted stamp exactly.
MatchedPairs associate_interpolated(const Trajectory& gt, const Trajectory& est,
                                    double max_diff = kDefaultMaxDiff,
                                    double offset = 0.0);

}  // namespace trajeval
