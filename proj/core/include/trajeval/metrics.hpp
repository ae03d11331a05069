#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "trajeval/association.hpp"
#include "trajeval/trajectory_io.hpp"

namespace trajeval {

/// Summary statistics of a nonempty error sample. `std` is the population
/// standard deviation; the median of an even-length sample is the mean of the
/// two central order statistics.
struct Stats {
  std::size_t count = 0;
  double rmse = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Throws ValidationError on empty input.
Stats summarize(std::span<const double> values);

enum class ErrorKind { AteTrans, RpeTrans, RpeRot };
std::string_view to_string(ErrorKind kind);

struct ErrorSample {
  double timestamp = 0.0;
  double value = 0.0;  // meters or radians
};

struct ErrorSeries {
  ErrorKind kind = ErrorKind::AteTrans;
  std::vector<ErrorSample> samples;
  Stats stats;

  std::vector<double> values() const;
};

/// Absolute trajectory error. Each sample is ||trans(Q_i^-1 S P_i)|| where S
/// is the Horn alignment (or identity when `align` is false).
ErrorSeries ate(const MatchedPairs& pairs, bool align = true);

/// Same as ate() but also returns the alignment that was applied.
struct AteResult {
  ErrorSeries series;
  RigidTransform alignment;
};
AteResult ate_with_alignment(const MatchedPairs& pairs, bool align = true);

enum class DeltaMode { Frames, Seconds, AllSampled };
std::string_view to_string(DeltaMode mode);

inline constexpr std::size_t kDefaultMaxSamples = 10000;

/// RPE window. `delta` is an integral frame count (Frames) or a duration in
/// seconds (Seconds) and is ignored for AllSampled.
struct DeltaSpec {
  DeltaMode mode = DeltaMode::Frames;
  double delta = 1.0;
  std::size_t max_samples = kDefaultMaxSamples;
  std::uint64_t seed = 0;

  static DeltaSpec frames(std::size_t n) { return {DeltaMode::Frames, double(n)}; }
  static DeltaSpec seconds(double s) { return {DeltaMode::Seconds, s}; }
  static DeltaSpec all_sampled(std::size_t max_samples = kDefaultMaxSamples,
                               std::uint64_t seed = 0) {
    return {DeltaMode::AllSampled, 0.0, max_samples, seed};
  }

  /// Throws ValidationError when the invariants for `mode` do not hold.
  void validate() const;
};

struct RpeResult {
  ErrorSeries trans;
  ErrorSeries rot;
};

/// Relative pose error. For every selected couple (i, j):
///   E = relative(relative(Q_i, Q_j), relative(P_i, P_j))
/// trans sample = ||trans(E)||, rot sample = angle(E), stamped with the gt
/// time of i.
///
///   Frames      j = i + delta, giving exactly n - delta couples.
///   Seconds     j = first index with t_j - t_i >= delta (gt stamps, with
///               1e-9 s slack for decimal stamp round-off).
///   AllSampled  every couple when n(n-1)/2 <= max_samples, otherwise
///               max_samples couples drawn as (delta ~ U[1, n-1],
///               i ~ U[0, n-1-delta]) from Rng(seed). Samples are ordered by
///               (i, j).
///
/// Throws EmptyWindowError when no couple fits.
RpeResult rpe(const MatchedPairs& pairs, const DeltaSpec& spec);

struct AllDeltasResult {
  double trans_rmse = 0.0;  // meters
  double rot_rmse = 0.0;    // radians
  bool exact = false;
  std::size_t couples_evaluated = 0;
  std::size_t deltas_evaluated = 0;
};

/// Mean over window sizes delta = 1 .. n-1 of the frames-mode RPE RMSE.
/// Evaluated exactly when n(n-1)/2 <= max_samples; otherwise approximated by
/// drawing max_samples (delta, i) couples (delta uniform first, then i),
/// computing a per-delta RMSE for each delta that was drawn and averaging
/// those. Deterministic for a fixed seed.
AllDeltasResult rpe_all_deltas(const MatchedPairs& pairs,
                               std::size_t max_samples = kDefaultMaxSamples,
                               std::uint64_t seed = 0);

/// How much of the ground truth the estimate actually covers.
struct CoverageReport {
  double matched_fraction = 0.0;   // matched gt poses / gt poses
  double temporal_coverage = 0.0;  // covered gt time / gt timespan
  double largest_gap = 0.0;        // seconds of gt time without coverage
};

/// A gt stamp is covered when some matched estimate stamp lies within
/// pairs.max_diff of it (after the offset). Covered time is the measure of
/// the union of [t - max_diff, t + max_diff] over covered stamps t, clipped
/// to the gt span; `largest_gap` is the longest uncovered stretch of that
/// span. A gt trajectory with a single stamp has coverage 1 or 0 and gap 0.
CoverageReport coverage(const Trajectory& gt, const MatchedPairs& pairs);

}  // namespace trajeval
