#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "record.hpp"
#include "trajeval/association.hpp"
#include "trajeval/trajectory_io.hpp"

namespace trajeval::cli {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "TRAJEVAL_OUTPUT_DIR";

/// Association according to params (nearest neighbour or interpolated gt).
MatchedPairs associate_with(const Trajectory& gt, const Trajectory& est, const EvalParams& params);

/// Full evaluation of one (gt, est) couple. Library errors propagate.
EvaluationRecord evaluate_pair(const Trajectory& gt, const Trajectory& est,
                               const EvalParams& params);

struct ReportEntry {
  std::string algorithm;
  std::string sequence;
  std::filesystem::path estimate;
  std::filesystem::path groundtruth;
  std::optional<double> external_runtime_seconds;
  std::optional<std::uint64_t> seed;
};

struct ReportConfig {
  std::vector<ReportEntry> entries;
  EvalParams params;
  std::optional<std::filesystem::path> output_dir;
};

/// Reads the JSON report configuration. Relative paths are resolved against
/// the directory holding the config file. Unknown keys, empty labels,
/// duplicate (algorithm, sequence) combinations and entries whose estimate
/// and ground-truth paths coincide are rejected with ValidationError.
ReportConfig load_report_config(const std::filesystem::path& path);
ReportConfig parse_report_config(const std::string& text, const std::filesystem::path& base_dir);

struct ReportOutcome {
  std::vector<EvaluationRecord> records;
  std::vector<int> exit_codes;  // per entry, 0 for success
};

/// Evaluates every entry (in parallel; results do not depend on scheduling)
/// and writes into `output_dir`:
///   records/<algorithm>__<sequence>.json   one EvaluationRecord per entry
///   summary.csv, summary.json              aggregate table
///   benchmark.svg                          four-panel grouped bar chart
///   timings.csv                            evaluation wall time per entry
/// Everything except timings.csv is byte-identical across runs.
ReportOutcome run_report(const ReportConfig& config, const std::filesystem::path& output_dir);

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,           // unreadable file, parse error, bad config
  kExitAssociation = 3,  // no overlapping timestamps
  kExitDegenerate = 4,   // degenerate geometry / too little data for a metric
};

/// Maps a library exception to the CLI exit-code contract.
int exit_code_for(const std::exception& e);

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace trajeval::cli
