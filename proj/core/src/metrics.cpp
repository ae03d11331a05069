#include "trajeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "trajeval/alignment.hpp"
#include "trajeval/errors.hpp"
#include "trajeval/random.hpp"

namespace trajeval {

Stats summarize(std::span<const double> values) {
  if (values.empty()) throw ValidationError("cannot summarize an empty sample");
  const auto n = static_cast<double>(values.size());

  Stats s;
  s.count = values.size();
  s.min = values.front();
  s.max = values.front();
  double sum = 0.0;
  double sumsq = 0.0;
  for (double v : values) {
    sum += v;
    sumsq += v * v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / n;
  s.rmse = std::sqrt(sumsq / n);

  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / n);

  std::vector<double> sorted(values.begin(), values.end());
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + mid, sorted.end());
  const double upper = sorted[mid];
  if (sorted.size() % 2 == 1) {
    s.median = upper;
  } else {
    const double lower = *std::max_element(sorted.begin(), sorted.begin() + mid);
    s.median = 0.5 * (lower + upper);
  }
  return s;
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AteTrans: return "ate_trans";
    case ErrorKind::RpeTrans: return "rpe_trans";
    case ErrorKind::RpeRot: return "rpe_rot";
  }
  return "unknown";
}

std::string_view to_string(DeltaMode mode) {
  switch (mode) {
    case DeltaMode::Frames: return "frames";
    case DeltaMode::Seconds: return "seconds";
    case DeltaMode::AllSampled: return "all";
  }
  return "unknown";
}

std::vector<double> ErrorSeries::values() const {
  std::vector<double> v;
  v.reserve(samples.size());
  for (const ErrorSample& s : samples) v.push_back(s.value);
  return v;
}

namespace {

ErrorSeries make_series(ErrorKind kind, std::vector<ErrorSample> samples) {
  ErrorSeries out;
  out.kind = kind;
  out.samples = std::move(samples);
  const std::vector<double> v = out.values();
  out.stats = summarize(v);
  return out;
}

struct CoupleError {
  double trans;
  double rot;
};

CoupleError couple_error(const MatchedPairs& pairs, std::size_t i, std::size_t j) {
  const PosePair& a = pairs.pairs[i];
  const PosePair& b = pairs.pairs[j];
  const RigidTransform gt_motion = relative(a.gt.transform, b.gt.transform);
  const RigidTransform est_motion = relative(a.est.transform, b.est.transform);
  const RigidTransform e = relative(gt_motion, est_motion);
  return {translation_norm(e), rotation_angle(e)};
}

RpeResult series_from_couples(
    const MatchedPairs& pairs,
    const std::vector<std::pair<std::size_t, std::size_t>>& couples) {
  std::vector<ErrorSample> trans;
  std::vector<ErrorSample> rot;
  trans.reserve(couples.size());
  rot.reserve(couples.size());
  for (const auto& [i, j] : couples) {
    const CoupleError err = couple_error(pairs, i, j);
    const double t = pairs.pairs[i].gt.timestamp;
    trans.push_back({t, err.trans});
    rot.push_back({t, err.rot});
  }
  return {make_series(ErrorKind::RpeTrans, std::move(trans)),
          make_series(ErrorKind::RpeRot, std::move(rot))};
}

std::uint64_t couple_total(std::size_t n) {
  return n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

// (delta, i) pairs in draw order; shared by rpe() and rpe_all_deltas().
std::vector<std::pair<std::size_t, std::size_t>> draw_couples(
    std::size_t n, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> drawn;
  drawn.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto delta = static_cast<std::size_t>(rng.uniform_int(1, n - 1));
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, n - 1 - delta));
    drawn.emplace_back(delta, i);
  }
  return drawn;
}

[[noreturn]] void throw_empty_window(const MatchedPairs& pairs, const DeltaSpec& spec) {
  std::ostringstream os;
  os << "no relative-pose couples for delta=" << spec.delta << " ("
     << to_string(spec.mode) << ") over " << pairs.size() << " pairs";
  if (!pairs.empty()) {
    os << " spanning " << pairs.pairs.back().gt.timestamp - pairs.pairs.front().gt.timestamp
       << " s";
  }
  throw EmptyWindowError(os.str());
}

}  // namespace

AteResult ate_with_alignment(const MatchedPairs& pairs, bool align) {
  if (pairs.empty()) throw InsufficientDataError("ATE needs at least one pair");
  RigidTransform s = RigidTransform::identity();
  if (align) s = horn_align(pairs).transform;

  std::vector<ErrorSample> samples;
  samples.reserve(pairs.size());
  for (const PosePair& p : pairs.pairs) {
    const RigidTransform f = compose(inverse(p.gt.transform), compose(s, p.est.transform));
    samples.push_back({p.gt.timestamp, translation_norm(f)});
  }
  return {make_series(ErrorKind::AteTrans, std::move(samples)), s};
}

ErrorSeries ate(const MatchedPairs& pairs, bool align) {
  return ate_with_alignment(pairs, align).series;
}

void DeltaSpec::validate() const {
  switch (mode) {
    case DeltaMode::Frames:
      if (!(delta >= 1.0) || delta != std::floor(delta) || !std::isfinite(delta)) {
        throw ValidationError("frames-mode delta must be a positive integer");
      }
      break;
    case DeltaMode::Seconds:
      if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ValidationError("seconds-mode delta must be positive");
      }
      break;
    case DeltaMode::AllSampled:
      if (max_samples == 0) throw ValidationError("max_samples must be positive");
      break;
  }
}

RpeResult rpe(const MatchedPairs& pairs, const DeltaSpec& spec) {
  spec.validate();
  const std::size_t n = pairs.size();
  std::vector<std::pair<std::size_t, std::size_t>> couples;

  switch (spec.mode) {
    case DeltaMode::Frames: {
      const double d = spec.delta;
      if (d >= static_cast<double>(n)) throw_empty_window(pairs, spec);
      const auto step = static_cast<std::size_t>(d);
      couples.reserve(n - step);
      for (std::size_t i = 0; i + step < n; ++i) couples.emplace_back(i, i + step);
      break;
    }
    case DeltaMode::Seconds: {
      constexpr double kSlack = 1e-9;
      std::size_t j = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double t0 = pairs.pairs[i].gt.timestamp;
        j = std::max(j, i + 1);
        while (j < n && pairs.pairs[j].gt.timestamp - t0 < spec.delta - kSlack) ++j;
        if (j >= n) break;
        couples.emplace_back(i, j);
      }
      break;
    }
    case DeltaMode::AllSampled: {
      if (n < 2) throw_empty_window(pairs, spec);
      if (couple_total(n) <= spec.max_samples) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) couples.emplace_back(i, j);
        }
      } else {
        for (const auto& [delta, i] : draw_couples(n, spec.max_samples, spec.seed)) {
          couples.emplace_back(i, i + delta);
        }
        std::sort(couples.begin(), couples.end());
      }
      break;
    }
  }
  if (couples.empty()) throw_empty_window(pairs, spec);
  return series_from_couples(pairs, couples);
}

AllDeltasResult rpe_all_deltas(const MatchedPairs& pairs, std::size_t max_samples,
                               std::uint64_t seed) {
  const std::size_t n = pairs.size();
  if (n < 2) {
    throw_empty_window(pairs, DeltaSpec::all_sampled(max_samples, seed));
  }
  if (max_samples == 0) throw ValidationError("max_samples must be positive");

  AllDeltasResult out;
  double trans_sum = 0.0;
  double rot_sum = 0.0;

  if (couple_total(n) <= max_samples) {
    out.exact = true;
    for (std::size_t delta = 1; delta < n; ++delta) {
      const RpeResult r = rpe(pairs, DeltaSpec::frames(delta));
      trans_sum += r.trans.stats.rmse;
      rot_sum += r.rot.stats.rmse;
      out.couples_evaluated += r.trans.samples.size();
    }
    out.deltas_evaluated = n - 1;
  } else {
    struct Accum {
      double trans_sq = 0.0;
      double rot_sq = 0.0;
      std::size_t count = 0;
    };
    std::map<std::size_t, Accum> per_delta;
    for (const auto& [delta, i] : draw_couples(n, max_samples, seed)) {
      const CoupleError err = couple_error(pairs, i, i + delta);
      Accum& acc = per_delta[delta];
      acc.trans_sq += err.trans * err.trans;
      acc.rot_sq += err.rot * err.rot;
      ++acc.count;
    }
    for (const auto& [delta, acc] : per_delta) {
      trans_sum += std::sqrt(acc.trans_sq / static_cast<double>(acc.count));
      rot_sum += std::sqrt(acc.rot_sq / static_cast<double>(acc.count));
    }
    out.couples_evaluated = max_samples;
    out.deltas_evaluated = per_delta.size();
  }
  out.trans_rmse = trans_sum / static_cast<double>(out.deltas_evaluated);
  out.rot_rmse = rot_sum / static_cast<double>(out.deltas_evaluated);
  return out;
}

CoverageReport coverage(const Trajectory& gt, const MatchedPairs& pairs) {
  if (gt.empty()) throw ValidationError("coverage needs a nonempty ground truth");
  CoverageReport out;

  std::vector<double> est_times;
  est_times.reserve(pairs.size());
  for (const PosePair& p : pairs.pairs) est_times.push_back(p.est.timestamp);
  std::sort(est_times.begin(), est_times.end());

  std::vector<char> covered(gt.size(), 0);
  std::size_t covered_count = 0;
  for (std::size_t k = 0; k < gt.size(); ++k) {
    const double target = gt.poses[k].timestamp + pairs.offset;
    auto it = std::lower_bound(est_times.begin(), est_times.end(), target - pairs.max_diff);
    if (it != est_times.end() && *it <= target + pairs.max_diff) {
      covered[k] = 1;
      ++covered_count;
    }
  }

  out.matched_fraction = std::min(
      1.0, static_cast<double>(pairs.size()) / static_cast<double>(gt.size()));

  const double span = gt.timespan();
  if (span <= 0.0) {
    out.temporal_coverage = covered_count > 0 ? 1.0 : 0.0;
    out.largest_gap = 0.0;
    return out;
  }

  // Union of [t_k - max_diff, t_k + max_diff] over covered stamps, clipped
  // to the gt span. Stamps are sorted, so intervals arrive in order.
  const double lo_bound = gt.start_time();
  const double hi_bound = gt.end_time();
  double covered_time = 0.0;
  double gap = 0.0;
  double cursor = lo_bound;  // end of the covered set so far
  for (std::size_t k = 0; k < gt.size(); ++k) {
    if (!covered[k]) continue;
    const double a = std::max(lo_bound, gt.poses[k].timestamp - pairs.max_diff);
    const double b = std::min(hi_bound, gt.poses[k].timestamp + pairs.max_diff);
    if (a > cursor) {
      gap = std::max(gap, a - cursor);
      covered_time += b - a;
    } else if (b > cursor) {
      covered_time += b - cursor;
    }
    cursor = std::max(cursor, b);
  }
  gap = std::max(gap, hi_bound - cursor);
  out.temporal_coverage = std::clamp(covered_time / span, 0.0, 1.0);
  out.largest_gap = std::clamp(gap, 0.0, span);
  return out;
}

}  // namespace trajeval
