#include "report.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "svg_plot.hpp"
#include "trajeval/errors.hpp"

namespace trajeval::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

MatchedPairs associate_with(const Trajectory& gt, const Trajectory& est,
                            const EvalParams& params) {
  return params.interpolate_gt
             ? associate_interpolated(gt, est, params.max_diff, params.offset)
             : associate(gt, est, params.max_diff, params.offset);
}

EvaluationRecord evaluate_pair(const Trajectory& gt, const Trajectory& est,
                               const EvalParams& params) {
  EvaluationRecord rec;
  rec.params = params;
  rec.pairs.gt_poses = gt.size();
  rec.pairs.est_poses = est.size();

  const MatchedPairs pairs = associate_with(gt, est, params);
  rec.pairs.matched = pairs.size();
  rec.pairs.unmatched_gt = pairs.unmatched_gt_count;
  rec.pairs.unmatched_est = pairs.unmatched_est_count;

  rec.ate = ate(pairs, params.align).stats;
  const RpeResult r = rpe(pairs, params.rpe);
  rec.rpe_trans = r.trans.stats;
  rec.rpe_rot = r.rot.stats;
  rec.coverage = coverage(gt, pairs);
  return rec;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NoOverlapError*>(&e)) return kExitAssociation;
  if (dynamic_cast<const DegenerateGeometryError*>(&e) ||
      dynamic_cast<const InsufficientDataError*>(&e) ||
      dynamic_cast<const EmptyWindowError*>(&e) || dynamic_cast<const OutOfRangeError*>(&e)) {
    return kExitDegenerate;
  }
  if (dynamic_cast<const ValidationError*>(&e)) return kExitUsage;
  return kExitIo;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "'");
}

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '.' || c == '_';
    out += ok ? c : '_';
  }
  return out;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

ReportConfig parse_report_config(const std::string& text, const fs::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("report config is not valid JSON: ") + e.what());
  }

  ReportConfig cfg;
  try {
    reject_unknown_keys(j, {"output_dir", "association", "align", "rpe", "entries"}, "config");
    if (j.contains("output_dir")) {
      cfg.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
    }
    if (j.contains("association")) {
      const auto& a = j.at("association");
      reject_unknown_keys(a, {"max_diff", "offset", "interpolate_gt"}, "association");
      cfg.params.max_diff = a.value("max_diff", kDefaultMaxDiff);
      cfg.params.offset = a.value("offset", 0.0);
      cfg.params.interpolate_gt = a.value("interpolate_gt", false);
    }
    cfg.params.align = j.value("align", true);
    if (j.contains("rpe")) {
      const auto& r = j.at("rpe");
      reject_unknown_keys(r, {"delta", "delta_unit", "samples", "seed"}, "rpe");
      cfg.params.rpe.mode = parse_delta_unit(r.value("delta_unit", std::string("frames")));
      cfg.params.rpe.delta = r.value("delta", 1.0);
      cfg.params.rpe.max_samples = r.value("samples", kDefaultMaxSamples);
      cfg.params.rpe.seed = r.value("seed", std::uint64_t{0});
    }
    if (!(cfg.params.max_diff > 0.0)) throw ValidationError("association.max_diff must be positive");
    cfg.params.rpe.validate();

    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.empty()) {
      throw ValidationError("config needs a nonempty 'entries' array");
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto& e = entries[k];
      const std::string where = "entries[" + std::to_string(k) + "]";
      reject_unknown_keys(e, {"algorithm", "sequence", "estimate", "groundtruth",
                              "external_runtime_seconds", "seed"},
                          where);
      ReportEntry entry;
      entry.algorithm = e.at("algorithm").get<std::string>();
      entry.sequence = e.at("sequence").get<std::string>();
      if (entry.algorithm.empty() || entry.sequence.empty()) {
        throw ValidationError(where + ": labels must be nonempty");
      }
      entry.estimate = resolve(base_dir, e.at("estimate").get<std::string>());
      entry.groundtruth = resolve(base_dir, e.at("groundtruth").get<std::string>());
      if (entry.estimate.lexically_normal() == entry.groundtruth.lexically_normal()) {
        throw ValidationError(where + ": estimate and groundtruth are the same file");
      }
      if (e.contains("external_runtime_seconds") && !e.at("external_runtime_seconds").is_null()) {
        entry.external_runtime_seconds = e.at("external_runtime_seconds").get<double>();
      }
      if (e.contains("seed")) entry.seed = e.at("seed").get<std::uint64_t>();
      if (!seen.insert({entry.algorithm, entry.sequence}).second) {
        throw ValidationError(where + ": duplicate algorithm/sequence combination");
      }
      cfg.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid report config: ") + e.what());
  }
  return cfg;
}

ReportConfig load_report_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_report_config(ss.str(), path.parent_path());
}

namespace {

struct EntryResult {
  EvaluationRecord record;
  int exit_code = 0;
};

EntryResult evaluate_entry(const ReportEntry& entry, const EvalParams& base) {
  EntryResult res;
  EvalParams params = base;
  if (entry.seed) params.rpe.seed = *entry.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Trajectory gt = load_tum(entry.groundtruth);
    const Trajectory est = load_tum(entry.estimate);
    res.record = evaluate_pair(gt, est, params);
  } catch (const std::exception& e) {
    res.record = EvaluationRecord{};
    res.record.params = params;
    res.record.status = "error";
    res.record.error = e.what();
    res.exit_code = exit_code_for(e);
  }
  res.record.algorithm = entry.algorithm;
  res.record.sequence = entry.sequence;
  res.record.external_runtime_seconds = entry.external_runtime_seconds;
  res.record.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::string benchmark_svg(const std::vector<EvaluationRecord>& records) {
  BarPanel ate_panel{"Absolute trajectory error (RMSE)", "m", {}};
  BarPanel rpe_t{"Relative pose error, translational (RMSE)", "m", {}};
  BarPanel rpe_r{"Relative pose error, rotational (RMSE)", "deg", {}};
  BarPanel runtime{"Processing time (external, supplied in config)", "s", {}};
  constexpr double kDeg = 180.0 / 3.14159265358979323846;
  for (const EvaluationRecord& r : records) {
    const auto pick = [](const std::optional<Stats>& s, double k = 1.0) -> std::optional<double> {
      if (!s) return std::nullopt;
      return s->rmse * k;
    };
    ate_panel.values.push_back({r.sequence, r.algorithm, pick(r.ate)});
    rpe_t.values.push_back({r.sequence, r.algorithm, pick(r.rpe_trans)});
    rpe_r.values.push_back({r.sequence, r.algorithm, pick(r.rpe_rot, kDeg)});
    runtime.values.push_back({r.sequence, r.algorithm, r.external_runtime_seconds});
  }
  return bar_panels_svg({ate_panel, rpe_t, rpe_r, runtime}, "Benchmark evaluation");
}

}  // namespace

ReportOutcome run_report(const ReportConfig& config, const fs::path& output_dir) {
  const std::size_t n = config.entries.size();
  std::vector<EntryResult> results(n);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      results[k] = evaluate_entry(config.entries[k], config.params);
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  ReportOutcome outcome;
  fs::create_directories(output_dir / "records");
  ojson summary;
  summary["schema"] = "trajeval.report/1";
  summary["parameters"] = to_json(config.params);
  summary["records"] = ojson::array();
  std::ostringstream timings;
  timings << "algorithm,sequence,evaluation_wall_time_s\n";

  for (EntryResult& res : results) {
    timings << res.record.algorithm << ',' << res.record.sequence << ','
            << format_number(res.record.wall_time_seconds.value_or(0.0)) << '\n';
    res.record.wall_time_seconds.reset();
    const ojson j = to_json(res.record);
    write_file_atomic(output_dir / "records" /
                          (safe_name(res.record.algorithm) + "__" +
                           safe_name(res.record.sequence) + ".json"),
                      j.dump(2) + "\n");
    summary["records"].push_back(j);
    outcome.exit_codes.push_back(res.exit_code);
    outcome.records.push_back(std::move(res.record));
  }

  write_file_atomic(output_dir / "summary.csv", records_to_csv(outcome.records));
  write_file_atomic(output_dir / "summary.json", summary.dump(2) + "\n");
  write_file_atomic(output_dir / "benchmark.svg", benchmark_svg(outcome.records));
  write_file_atomic(output_dir / "timings.csv", timings.str());
  return outcome;
}

}  // namespace trajeval::cli
