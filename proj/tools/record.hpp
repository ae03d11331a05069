#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "trajeval/metrics.hpp"

namespace trajeval::cli {

/// Parameters shared by every evaluation; echoed into each record.
struct EvalParams {
  double max_diff = kDefaultMaxDiff;
  double offset = 0.0;
  bool interpolate_gt = false;
  bool align = true;
  DeltaSpec rpe;
};

struct PairCounts {
  std::size_t matched = 0;
  std::size_t unmatched_gt = 0;
  std::size_t unmatched_est = 0;
  std::size_t gt_poses = 0;
  std::size_t est_poses = 0;
};

/// Threshold below which a record is flagged as an incomplete estimate.
inline constexpr double kLowCoverageThreshold = 0.99;

struct EvaluationRecord {
  std::string algorithm;
  std::string sequence;
  std::string status = "ok";  // "ok" or "error"
  std::string error;          // set when status == "error"
  std::optional<Stats> ate;
  std::optional<Stats> rpe_trans;
  std::optional<Stats> rpe_rot;
  std::optional<CoverageReport> coverage;
  PairCounts pairs;
  std::optional<double> external_runtime_seconds;
  // Not written by the report (kept out of the deterministic outputs).
  std::optional<double> wall_time_seconds;
  EvalParams params;

  bool ok() const { return status == "ok"; }
  bool low_coverage() const {
    return coverage && coverage->temporal_coverage < kLowCoverageThreshold;
  }
};

nlohmann::ordered_json to_json(const Stats& s);
Stats stats_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const CoverageReport& c);
nlohmann::ordered_json to_json(const EvalParams& p);
nlohmann::ordered_json to_json(const EvaluationRecord& r);
/// Inverse of to_json(EvaluationRecord). Throws nlohmann::json::exception
/// (or ValidationError) on schema violations.
EvaluationRecord record_from_json(const nlohmann::json& j);

/// One CSV row per record, header first. Numbers use the shortest text that
/// round-trips; empty cells for missing values.
std::string records_to_csv(const std::vector<EvaluationRecord>& records);

/// Shortest round-trip decimal text ('.' separator, never locale dependent).
std::string format_number(double v);

DeltaMode parse_delta_unit(const std::string& unit);

}  // namespace trajeval::cli
