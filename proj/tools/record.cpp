#include "record.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "trajeval/errors.hpp"

namespace trajeval::cli {

using ojson = nlohmann::ordered_json;

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

DeltaMode parse_delta_unit(const std::string& unit) {
  if (unit == "frames") return DeltaMode::Frames;
  if (unit == "seconds") return DeltaMode::Seconds;
  if (unit == "all") return DeltaMode::AllSampled;
  throw ValidationError("delta unit must be one of frames|seconds|all, got '" + unit + "'");
}

ojson to_json(const Stats& s) {
  return ojson{{"count", s.count}, {"rmse", s.rmse}, {"mean", s.mean}, {"median", s.median},
               {"std", s.std},     {"min", s.min},   {"max", s.max}};
}

Stats stats_from_json(const nlohmann::json& j) {
  Stats s;
  s.count = j.at("count").get<std::size_t>();
  s.rmse = j.at("rmse").get<double>();
  s.mean = j.at("mean").get<double>();
  s.median = j.at("median").get<double>();
  s.std = j.at("std").get<double>();
  s.min = j.at("min").get<double>();
  s.max = j.at("max").get<double>();
  return s;
}

ojson to_json(const CoverageReport& c) {
  return ojson{{"matched_fraction", c.matched_fraction},
               {"temporal_coverage", c.temporal_coverage},
               {"largest_gap_seconds", c.largest_gap}};
}

ojson to_json(const EvalParams& p) {
  ojson j{{"max_diff", p.max_diff},
          {"offset", p.offset},
          {"interpolate_gt", p.interpolate_gt},
          {"align", p.align},
          {"delta_unit", std::string(to_string(p.rpe.mode))}};
  if (p.rpe.mode == DeltaMode::AllSampled) {
    j["delta"] = nullptr;
  } else {
    j["delta"] = p.rpe.delta;
  }
  j["samples"] = p.rpe.max_samples;
  j["seed"] = p.rpe.seed;
  return j;
}

namespace {

EvalParams params_from_json(const nlohmann::json& j) {
  EvalParams p;
  p.max_diff = j.at("max_diff").get<double>();
  p.offset = j.at("offset").get<double>();
  p.interpolate_gt = j.at("interpolate_gt").get<bool>();
  p.align = j.at("align").get<bool>();
  p.rpe.mode = parse_delta_unit(j.at("delta_unit").get<std::string>());
  p.rpe.delta = j.at("delta").is_null() ? 0.0 : j.at("delta").get<double>();
  p.rpe.max_samples = j.at("samples").get<std::size_t>();
  p.rpe.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

template <typename T>
void put_optional(ojson& j, const char* key, const std::optional<T>& v) {
  if (v) {
    j[key] = to_json(*v);
  } else {
    j[key] = nullptr;
  }
}

}  // namespace

ojson to_json(const EvaluationRecord& r) {
  ojson j;
  j["schema"] = "trajeval.evaluation_record/1";
  j["algorithm"] = r.algorithm;
  j["sequence"] = r.sequence;
  j["status"] = r.status;
  if (!r.ok()) j["error"] = r.error;
  j["pairs"] = ojson{{"matched", r.pairs.matched},
                     {"unmatched_gt", r.pairs.unmatched_gt},
                     {"unmatched_est", r.pairs.unmatched_est},
                     {"gt_poses", r.pairs.gt_poses},
                     {"est_poses", r.pairs.est_poses}};
  put_optional(j, "ate", r.ate);
  put_optional(j, "rpe_trans", r.rpe_trans);
  put_optional(j, "rpe_rot", r.rpe_rot);
  put_optional(j, "coverage", r.coverage);
  j["low_coverage"] = r.low_coverage();
  if (r.external_runtime_seconds) {
    j["external_runtime_seconds"] = *r.external_runtime_seconds;
  } else {
    j["external_runtime_seconds"] = nullptr;
  }
  if (r.wall_time_seconds) j["wall_time_seconds"] = *r.wall_time_seconds;
  j["parameters"] = to_json(r.params);
  return j;
}

EvaluationRecord record_from_json(const nlohmann::json& j) {
  if (j.at("schema").get<std::string>() != "trajeval.evaluation_record/1") {
    throw ValidationError("unsupported record schema");
  }
  EvaluationRecord r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.sequence = j.at("sequence").get<std::string>();
  r.status = j.at("status").get<std::string>();
  if (r.status != "ok" && r.status != "error") throw ValidationError("bad record status");
  if (j.contains("error")) r.error = j.at("error").get<std::string>();

  const auto& p = j.at("pairs");
  r.pairs.matched = p.at("matched").get<std::size_t>();
  r.pairs.unmatched_gt = p.at("unmatched_gt").get<std::size_t>();
  r.pairs.unmatched_est = p.at("unmatched_est").get<std::size_t>();
  r.pairs.gt_poses = p.at("gt_poses").get<std::size_t>();
  r.pairs.est_poses = p.at("est_poses").get<std::size_t>();

  const auto stats_or_null = [&](const char* key) -> std::optional<Stats> {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return stats_from_json(v);
  };
  r.ate = stats_or_null("ate");
  r.rpe_trans = stats_or_null("rpe_trans");
  r.rpe_rot = stats_or_null("rpe_rot");
  if (const auto& c = j.at("coverage"); !c.is_null()) {
    r.coverage = CoverageReport{c.at("matched_fraction").get<double>(),
                                c.at("temporal_coverage").get<double>(),
                                c.at("largest_gap_seconds").get<double>()};
  }
  if (const auto& rt = j.at("external_runtime_seconds"); !rt.is_null()) {
    r.external_runtime_seconds = rt.get<double>();
  }
  if (j.contains("wall_time_seconds")) r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  r.params = params_from_json(j.at("parameters"));
  return r;
}

std::string records_to_csv(const std::vector<EvaluationRecord>& records) {
  std::ostringstream os;
  os << "algorithm,sequence,status,matched_pairs,gt_poses,est_poses";
  for (const char* m : {"ate", "rpe_trans", "rpe_rot"}) {
    for (const char* s : {"rmse", "mean", "median", "std", "min", "max"}) {
      os << ',' << m << '_' << s;
    }
  }
  os << ",matched_fraction,temporal_coverage,largest_gap_s,coverage_flag,external_runtime_s\n";

  const auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  };
  const auto stats_cells = [&](const std::optional<Stats>& s) {
    std::string out;
    for (int k = 0; k < 6; ++k) {
      out += ',';
      if (!s) continue;
      const double v[] = {s->rmse, s->mean, s->median, s->std, s->min, s->max};
      out += format_number(v[k]);
    }
    return out;
  };

  for (const EvaluationRecord& r : records) {
    os << quote(r.algorithm) << ',' << quote(r.sequence) << ',' << r.status << ','
       << r.pairs.matched << ',' << r.pairs.gt_poses << ',' << r.pairs.est_poses;
    os << stats_cells(r.ate) << stats_cells(r.rpe_trans) << stats_cells(r.rpe_rot);
    if (r.coverage) {
      os << ',' << format_number(r.coverage->matched_fraction) << ','
         << format_number(r.coverage->temporal_coverage) << ','
         << format_number(r.coverage->largest_gap) << ','
         << (r.low_coverage() ? "LOW_COVERAGE" : "ok");
    } else {
      os << ",,,,";
    }
    os << ',';
    if (r.external_runtime_seconds) os << format_number(*r.external_runtime_seconds);
    os << '\n';
  }
  return os.str();
}

}  // namespace trajeval::cli
