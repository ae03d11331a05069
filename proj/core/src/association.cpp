#include "trajeval/association.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "trajeval/errors.hpp"

namespace trajeval {

namespace {

struct Candidate {
  double diff;
  std::size_t gt;
  std::size_t est;
};

std::string describe_range(const Trajectory& t) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << "[" << t.start_time() << ", " << t.end_time() << "]";
  return os.str();
}

void check_inputs(const Trajectory& gt, const Trajectory& est, double max_diff,
                  double offset) {
  if (!(max_diff > 0.0) || !std::isfinite(max_diff)) {
    throw ValidationError("max_diff must be a positive number of seconds");
  }
  if (!std::isfinite(offset)) throw ValidationError("offset must be finite");
  if (gt.empty()) throw EmptyTrajectoryError("ground-truth trajectory is empty");
  if (est.empty()) throw EmptyTrajectoryError("estimated trajectory is empty");
}

[[noreturn]] void throw_no_overlap(const Trajectory& gt, const Trajectory& est,
                                   double max_diff, double offset) {
  std::ostringstream os;
  os << "no ground-truth/estimate pairs within max_diff=" << max_diff
     << " s (offset " << offset << " s): ground truth spans "
     << describe_range(gt) << ", estimate spans " << describe_range(est);
  throw NoOverlapError(os.str());
}

}  // namespace

MatchedPairs associate(const Trajectory& gt, const Trajectory& est,
                       double max_diff, double offset) {
  check_inputs(gt, est, max_diff, offset);

  const auto& e = est.poses;
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const double target = gt.poses[i].timestamp + offset;
    auto it = std::lower_bound(
        e.begin(), e.end(), target - max_diff,
        [](const Pose& p, double t) { return p.timestamp < t; });
    for (; it != e.end() && it->timestamp <= target + max_diff; ++it) {
      const double diff = std::abs(target - it->timestamp);
      if (diff <= max_diff) {
        candidates.push_back(
            {diff, i, static_cast<std::size_t>(it - e.begin())});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(a.diff, a.gt, a.est) < std::tie(b.diff, b.gt, b.est);
            });

  std::vector<bool> gt_used(gt.size(), false);
  std::vector<bool> est_used(est.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> accepted;
  for (const Candidate& c : candidates) {
    if (gt_used[c.gt] || est_used[c.est]) continue;
    gt_used[c.gt] = true;
    est_used[c.est] = true;
    accepted.emplace_back(c.gt, c.est);
  }
  if (accepted.empty()) throw_no_overlap(gt, est, max_diff, offset);
  std::sort(accepted.begin(), accepted.end());

  MatchedPairs out;
  out.max_diff = max_diff;
  out.offset = offset;
  out.pairs.reserve(accepted.size());
  for (const auto& [i, j] : accepted) {
    out.pairs.push_back({gt.poses[i], est.poses[j]});
  }
  out.unmatched_gt_count = gt.size() - accepted.size();
  out.unmatched_est_count = est.size() - accepted.size();
  return out;
}

Pose interpolate(const Trajectory& traj, double t) {
  if (traj.empty()) throw InsufficientDataError("cannot interpolate an empty trajectory");
  if (!(t >= traj.start_time() && t <= traj.end_time())) {
    std::ostringstream os;
    os.precision(9);
    os << "time " << t << " s is outside trajectory range " << describe_range(traj);
    throw OutOfRangeError(os.str());
  }
  const auto& p = traj.poses;
  auto hi = std::lower_bound(p.begin(), p.end(), t, [](const Pose& a, double v) {
    return a.timestamp < v;
  });
  if (hi->timestamp == t) return *hi;
  if (traj.size() < 2) throw InsufficientDataError("interpolation needs two poses");
  const Pose& b = *hi;
  const Pose& a = *(hi - 1);
  const double s = (t - a.timestamp) / (b.timestamp - a.timestamp);

  const Vec3 trans = (1.0 - s) * a.transform.translation() + s * b.transform.translation();
  const Eigen::Quaterniond qa(a.transform.rotation());
  const Eigen::Quaterniond qb(b.transform.rotation());
  // Eigen's slerp flips qb when the dot product is negative: shorter arc.
  const Eigen::Quaterniond q = qa.slerp(s, qb);
  return Pose(t, RigidTransform(Quaternion(q.x(), q.y(), q.z(), q.w()), trans));
}

MatchedPairs associate_interpolated(const Trajectory& gt, const Trajectory& est,
                                    double max_diff, double offset) {
  check_inputs(gt, est, max_diff, offset);

  const auto& g = gt.poses;
  const auto nearest_gap = [&](double t) {
    auto it = std::lower_bound(g.begin(), g.end(), t, [](const Pose& a, double v) {
      return a.timestamp < v;
    });
    double best = INFINITY;
    if (it != g.end()) best = std::min(best, std::abs(it->timestamp - t));
    if (it != g.begin()) best = std::min(best, std::abs((it - 1)->timestamp - t));
    return best;
  };

  MatchedPairs out;
  out.max_diff = max_diff;
  out.offset = offset;
  std::vector<double> kept_est_times;
  for (const Pose& e : est.poses) {
    const double t = e.timestamp - offset;
    if (t < gt.start_time() || t > gt.end_time()) continue;
    if (nearest_gap(t) > max_diff) continue;
    out.pairs.push_back({interpolate(gt, t), e});
    kept_est_times.push_back(e.timestamp);
  }
  if (out.pairs.empty()) throw_no_overlap(gt, est, max_diff, offset);

  out.unmatched_est_count = est.size() - out.pairs.size();
  std::size_t covered = 0;
  for (const Pose& p : g) {
    const double target = p.timestamp + offset;
    auto it = std::lower_bound(kept_est_times.begin(), kept_est_times.end(),
                               target - max_diff);
    if (it != kept_est_times.end() && *it <= target + max_diff) ++covered;
  }
  out.unmatched_gt_count = gt.size() - covered;
  return out;
}

}  // namespace trajeval
