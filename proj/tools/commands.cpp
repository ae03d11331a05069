#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "report.hpp"
#include "svg_plot.hpp"
#include "trajeval/alignment.hpp"
#include "trajeval/errors.hpp"
#include "trajeval/synthgen.hpp"

namespace trajeval::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kFullSpanWarning =
    "warning: start-vs-end RPE (delta = full span) penalizes rotational errors in the "
    "beginning of a trajectory more than towards the end; prefer --delta-unit all";

struct PairOptions {
  std::string gt_path;
  std::string est_path;
  double max_diff = kDefaultMaxDiff;
  double offset = 0.0;
  bool interpolate_gt = false;
  std::string format = "text";
  std::string output_dir;
};

void add_pair_options(CLI::App* cmd, PairOptions& o) {
  cmd->add_option("groundtruth", o.gt_path, "Ground-truth trajectory (TUM format)")->required();
  cmd->add_option("estimate", o.est_path, "Estimated trajectory (TUM format)")->required();
  cmd->add_option("--max-diff", o.max_diff, "Maximum timestamp difference for a match [s]")
      ->capture_default_str();
  cmd->add_option("--offset", o.offset, "Time offset added to ground-truth stamps [s]")
      ->capture_default_str();
  cmd->add_flag("--interpolate-gt", o.interpolate_gt,
                "Interpolate ground truth at estimate stamps instead of nearest-neighbour matching");
}

void add_output_dir(CLI::App* cmd, std::string& dir) {
  cmd->add_option("--output-dir", dir,
                  std::string("Directory for every file written (default: $") + kOutputDirEnv +
                      " or the working directory)");
}

fs::path output_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return fs::current_path();
}

// Resolves `name` below `root`; anything escaping the root is a usage error.
fs::path place_output(const fs::path& root, const std::string& name) {
  const fs::path p(name);
  const fs::path full = (p.is_absolute() ? p : root / p).lexically_normal();
  const fs::path canon_root = fs::weakly_canonical(fs::absolute(root));
  const fs::path canon_full = fs::weakly_canonical(fs::absolute(full));
  const fs::path rel = canon_full.lexically_relative(canon_root);
  if (rel.empty() || rel == "." || *rel.begin() == "..") {
    throw ValidationError("output path '" + name + "' lies outside the output directory '" +
                          root.string() + "'");
  }
  return canon_full;
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

struct LoadedPair {
  Trajectory gt;
  Trajectory est;
};

LoadedPair load_pair(const PairOptions& o, std::ostream& err) {
  std::vector<std::string> warnings;
  LoadedPair lp{load_tum(o.gt_path, &warnings), load_tum(o.est_path, &warnings)};
  print_warnings(err, warnings);
  return lp;
}

EvalParams params_from(const PairOptions& o) {
  EvalParams p;
  p.max_diff = o.max_diff;
  p.offset = o.offset;
  p.interpolate_gt = o.interpolate_gt;
  return p;
}

void check_format(const std::string& f) {
  if (f != "text" && f != "json") throw ValidationError("--format must be text or json");
}

std::string fixed6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

void print_stats(std::ostream& out, const std::string& prefix, const Stats& s,
                 const std::string& unit) {
  const std::pair<const char*, double> rows[] = {{"rmse", s.rmse},     {"mean", s.mean},
                                                 {"median", s.median}, {"std", s.std},
                                                 {"min", s.min},       {"max", s.max}};
  for (const auto& [name, v] : rows) {
    out << prefix << '.' << std::left << std::setw(8) << name << std::right << fixed6(v) << ' '
        << unit << '\n';
  }
}

void print_pairs(std::ostream& out, const EvaluationRecord& r) {
  out << "compared_pose_pairs " << r.pairs.matched << " (gt " << r.pairs.gt_poses << ", est "
      << r.pairs.est_poses << ", unmatched gt " << r.pairs.unmatched_gt << ", unmatched est "
      << r.pairs.unmatched_est << ")\n";
}

void print_coverage(std::ostream& out, std::ostream& err, const CoverageReport& c) {
  out << "coverage.matched_fraction  " << fixed6(c.matched_fraction) << '\n'
      << "coverage.temporal          " << fixed6(c.temporal_coverage) << '\n'
      << "coverage.largest_gap       " << fixed6(c.largest_gap) << " s\n";
  if (c.temporal_coverage < kLowCoverageThreshold) {
    std::ostringstream pct;
    pct << std::fixed << std::setprecision(1) << 100.0 * c.temporal_coverage;
    err << "warning: the estimate covers only " << pct.str()
        << "% of the ground-truth timespan (largest gap " << fixed6(c.largest_gap)
        << " s); motion without estimated poses is ignored by ATE and RPE, so compare "
           "incomplete trajectories with care\n";
  }
}

EvaluationRecord base_record(const PairOptions& o, const LoadedPair& lp, const MatchedPairs& pairs,
                             const EvalParams& params) {
  EvaluationRecord rec;
  rec.algorithm = fs::path(o.est_path).filename().string();
  rec.sequence = fs::path(o.gt_path).filename().string();
  rec.params = params;
  rec.pairs = {pairs.size(), pairs.unmatched_gt_count, pairs.unmatched_est_count, lp.gt.size(),
               lp.est.size()};
  rec.coverage = coverage(lp.gt, pairs);
  return rec;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- ate

struct AteOptions {
  PairOptions pair;
  bool no_align = false;
  std::string plot;
};

int cmd_ate(const AteOptions& o, std::ostream& out, std::ostream& err) {
  check_format(o.pair.format);
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedPair lp = load_pair(o.pair, err);
  EvalParams params = params_from(o.pair);
  params.align = !o.no_align;
  const MatchedPairs pairs = associate_with(lp.gt, lp.est, params);
  const AteResult res = ate_with_alignment(pairs, params.align);

  EvaluationRecord rec = base_record(o.pair, lp, pairs, params);
  rec.ate = res.series.stats;

  if (!o.plot.empty()) {
    std::vector<Vec3> gt_path;
    std::vector<Vec3> est_path;
    for (const PosePair& p : pairs.pairs) {
      gt_path.push_back(p.gt.transform.translation());
      est_path.push_back(res.alignment.apply(p.est.transform.translation()));
    }
    const fs::path target = place_output(output_root(o.pair.output_dir), o.plot);
    write_file_atomic(target, ate_plot_svg(gt_path, est_path,
                                           "ATE: " + rec.algorithm + " vs " + rec.sequence));
  }
  rec.wall_time_seconds = seconds_since(t0);

  if (o.pair.format == "json") {
    ojson j = to_json(rec);
    const Quaternion q = res.alignment.quaternion().canonical();
    const Vec3& t = res.alignment.translation();
    j["alignment"] = {{"translation", {t.x(), t.y(), t.z()}},
                      {"quaternion_xyzw", {q.x(), q.y(), q.z(), q.w()}}};
    out << j.dump() << '\n';
  } else {
    print_pairs(out, rec);
    print_stats(out, "absolute_translational_error", *rec.ate, "m");
    out << "evaluation_time " << fixed6(*rec.wall_time_seconds) << " s\n";
  }
  // Coverage lines only in text mode; the warning goes to stderr either way.
  std::ostringstream sink;
  print_coverage(o.pair.format == "text" ? out : sink, err, *rec.coverage);
  return kExitOk;
}

// ---------------------------------------------------------------- rpe

struct RpeOptions {
  PairOptions pair;
  std::string delta = "1";
  std::string unit = "frames";
  std::size_t samples = kDefaultMaxSamples;
  std::uint64_t seed = 0;
};

int cmd_rpe(const RpeOptions& o, std::ostream& out, std::ostream& err) {
  check_format(o.pair.format);
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedPair lp = load_pair(o.pair, err);
  EvalParams params = params_from(o.pair);
  params.align = false;
  const MatchedPairs pairs = associate_with(lp.gt, lp.est, params);

  DeltaSpec spec;
  spec.mode = parse_delta_unit(o.unit);
  spec.max_samples = o.samples;
  spec.seed = o.seed;
  bool full_span = false;
  if (spec.mode != DeltaMode::AllSampled) {
    if (o.delta == "n") {
      if (spec.mode != DeltaMode::Frames) throw ValidationError("--delta n requires --delta-unit frames");
      if (pairs.size() < 2) throw InsufficientDataError("full-span RPE needs two pairs");
      spec.delta = static_cast<double>(pairs.size() - 1);
      full_span = true;
    } else {
      try {
        std::size_t used = 0;
        spec.delta = std::stod(o.delta, &used);
        if (used != o.delta.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::logic_error&) {
        throw ValidationError("--delta must be a number or 'n', got '" + o.delta + "'");
      }
      full_span = spec.mode == DeltaMode::Frames && pairs.size() >= 2 &&
                  spec.delta == static_cast<double>(pairs.size() - 1);
    }
  }
  params.rpe = spec;
  if (full_span) err << kFullSpanWarning << '\n';

  const RpeResult r = rpe(pairs, spec);
  std::optional<AllDeltasResult> all;
  if (spec.mode == DeltaMode::AllSampled) all = rpe_all_deltas(pairs, spec.max_samples, spec.seed);

  EvaluationRecord rec = base_record(o.pair, lp, pairs, params);
  rec.rpe_trans = r.trans.stats;
  rec.rpe_rot = r.rot.stats;
  rec.wall_time_seconds = seconds_since(t0);

  if (o.pair.format == "json") {
    ojson j = to_json(rec);
    if (all) {
      j["all_deltas"] = {{"trans_rmse", all->trans_rmse},
                         {"rot_rmse", all->rot_rmse},
                         {"exact", all->exact},
                         {"couples", all->couples_evaluated},
                         {"deltas", all->deltas_evaluated}};
    }
    out << j.dump() << '\n';
  } else {
    print_pairs(out, rec);
    if (all) {
      out << "all_deltas.mode              " << (all->exact ? "exact" : "sampled") << " ("
          << all->couples_evaluated << " couples, " << all->deltas_evaluated << " deltas)\n"
          << "all_deltas.trans_rmse        " << fixed6(all->trans_rmse) << " m\n"
          << "all_deltas.rot_rmse          " << fixed6(all->rot_rmse) << " rad\n";
    }
    out << "relative_pose_couples " << r.trans.samples.size() << '\n';
    print_stats(out, "translational_error", *rec.rpe_trans, "m");
    print_stats(out, "rotational_error", *rec.rpe_rot, "rad");
    out << "evaluation_time " << fixed6(*rec.wall_time_seconds) << " s\n";
  }
  std::ostringstream sink;
  print_coverage(o.pair.format == "text" ? out : sink, err, *rec.coverage);
  return kExitOk;
}

// ---------------------------------------------------------------- associate

struct AssociateOptions {
  PairOptions pair;
  std::string output;
};

int cmd_associate(const AssociateOptions& o, std::ostream& out, std::ostream& err) {
  const LoadedPair lp = load_pair(o.pair, err);
  const MatchedPairs pairs = associate_with(lp.gt, lp.est, params_from(o.pair));
  std::string text;
  for (const PosePair& p : pairs.pairs) {
    text += format_fixed(p.gt.timestamp) + ' ' + format_fixed(p.est.timestamp) + '\n';
  }
  if (o.output.empty()) {
    out << text;
  } else {
    write_file_atomic(place_output(output_root(o.pair.output_dir), o.output), text);
  }
  err << "associated " << pairs.size() << " pairs (unmatched gt " << pairs.unmatched_gt_count
      << ", unmatched est " << pairs.unmatched_est_count << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------- synth

struct SynthOptions {
  std::string shape = "line";
  double duration = 10.0;
  double rate = 30.0;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> degrade_seed;
  std::vector<std::string> degrade;
  std::string gt_out = "groundtruth.txt";
  std::string est_out = "estimate.txt";
  std::string output_dir;
};

std::vector<double> parse_numbers(const std::string& s, std::size_t expected, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ValidationError("bad number '" + item + "' in --degrade " + what);
    }
  }
  if (v.size() != expected) {
    throw ValidationError("--degrade " + what + " expects " + std::to_string(expected) +
                          " comma-separated values");
  }
  return v;
}

DegradationSpec parse_degradation(const std::string& text, std::uint64_t seed) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ValidationError("--degrade expects kind:values, e.g. gap:4,6");
  }
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  if (kind == "noise") {
    const auto v = parse_numbers(args, 2, text);
    return DegradationSpec::iid_noise(v[0], v[1], seed);
  }
  if (kind == "drift") {
    const auto v = parse_numbers(args, 2, text);
    return DegradationSpec::random_walk_drift(v[0], v[1], seed);
  }
  if (kind == "gap") {
    const auto v = parse_numbers(args, 2, text);
    return DegradationSpec::gap(v[0], v[1]);
  }
  if (kind == "truncate") {
    const auto v = parse_numbers(args, 1, text);
    return DegradationSpec::truncate(v[0]);
  }
  throw ValidationError("unknown degradation kind '" + kind + "' (noise|drift|gap|truncate)");
}

int cmd_synth(const SynthOptions& o, std::ostream& out) {
  MotionSpec spec;
  spec.shape = parse_motion_shape(o.shape);
  spec.duration = o.duration;
  spec.rate = o.rate;
  spec.scale = o.scale;
  spec.seed = o.seed;

  std::vector<DegradationSpec> degradations;
  const std::uint64_t base_seed = o.degrade_seed.value_or(o.seed + 1);
  for (std::size_t k = 0; k < o.degrade.size(); ++k) {
    degradations.push_back(parse_degradation(o.degrade[k], base_seed + k));
  }

  const fs::path root = output_root(o.output_dir);
  const Trajectory gt = generate(spec);
  {
    std::ostringstream os;
    write_tum(gt, os);
    write_file_atomic(place_output(root, o.gt_out), os.str());
  }
  out << "wrote " << gt.size() << " ground-truth poses to " << o.gt_out << '\n';

  if (!degradations.empty()) {
    Trajectory est = gt;
    for (const DegradationSpec& d : degradations) est = degrade(est, d);
    std::ostringstream os;
    write_tum(est, os);
    write_file_atomic(place_output(root, o.est_out), os.str());
    out << "wrote " << est.size() << " estimated poses to " << o.est_out << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- report

struct ReportOptions {
  std::string config;
  std::string output_dir;
};

int cmd_report(const ReportOptions& o, std::ostream& out, std::ostream& err) {
  ReportConfig cfg;
  try {
    cfg = load_report_config(o.config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  fs::path dir;
  if (!o.output_dir.empty()) {
    dir = o.output_dir;
  } else if (cfg.output_dir) {
    dir = *cfg.output_dir;
  } else {
    dir = output_root("");
  }

  const ReportOutcome res = run_report(cfg, dir);
  std::size_t failures = 0;
  int first_code = kExitOk;
  for (std::size_t k = 0; k < res.records.size(); ++k) {
    const EvaluationRecord& r = res.records[k];
    out << std::left << std::setw(24) << r.algorithm << std::setw(28) << r.sequence << std::right;
    if (r.ok()) {
      out << " ate " << fixed6(r.ate->rmse) << " m  rpe " << fixed6(r.rpe_trans->rmse) << " m "
          << fixed6(r.rpe_rot->rmse) << " rad  coverage " << fixed6(r.coverage->temporal_coverage)
          << (r.low_coverage() ? "  LOW_COVERAGE" : "") << '\n';
      if (r.low_coverage()) {
        err << "warning: " << r.algorithm << " / " << r.sequence
            << " covers only part of the ground truth; its errors ignore the missing motion\n";
      }
    } else {
      out << " FAILED: " << r.error << '\n';
      ++failures;
      if (first_code == kExitOk) first_code = res.exit_codes[k];
    }
  }
  out << "report written to " << dir.string() << '\n';
  if (failures == res.records.size()) return first_code == kExitOk ? kExitIo : first_code;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"trajeval: absolute trajectory error and relative pose error for SLAM / odometry"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "trajeval 0.3.0");

  AteOptions ate_o;
  auto* ate_cmd = app.add_subcommand("ate", "Absolute trajectory error after rigid alignment");
  add_pair_options(ate_cmd, ate_o.pair);
  ate_cmd->add_flag("--no-align", ate_o.no_align, "Skip the rigid alignment (pre-registered input)");
  ate_cmd->add_option("--plot", ate_o.plot, "Write a top-down SVG plot (inside the output dir)");
  ate_cmd->add_option("--format", ate_o.pair.format, "text or json")->capture_default_str();
  add_output_dir(ate_cmd, ate_o.pair.output_dir);

  RpeOptions rpe_o;
  auto* rpe_cmd = app.add_subcommand("rpe", "Relative pose error (drift) over a window delta");
  add_pair_options(rpe_cmd, rpe_o.pair);
  rpe_cmd->add_option("--delta", rpe_o.delta,
                      "Window size (frames or seconds); 'n' compares start with end")
      ->capture_default_str();
  rpe_cmd->add_option("--delta-unit", rpe_o.unit, "frames | seconds | all")->capture_default_str();
  rpe_cmd->add_option("--samples", rpe_o.samples, "Couple budget for --delta-unit all")
      ->capture_default_str();
  rpe_cmd->add_option("--seed", rpe_o.seed, "Sampling seed")->capture_default_str();
  rpe_cmd->add_option("--format", rpe_o.pair.format, "text or json")->capture_default_str();
  add_output_dir(rpe_cmd, rpe_o.pair.output_dir);

  AssociateOptions assoc_o;
  auto* assoc_cmd = app.add_subcommand("associate", "Print matched 'gt_t est_t' timestamp pairs");
  add_pair_options(assoc_cmd, assoc_o.pair);
  assoc_cmd->add_option("--output", assoc_o.output, "Write pairs to a file (inside the output dir)");
  add_output_dir(assoc_cmd, assoc_o.pair.output_dir);

  SynthOptions synth_o;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic ground truth and degraded estimates");
  synth_cmd->add_option("--shape", synth_o.shape, "line | circle | figure_eight")->capture_default_str();
  synth_cmd->add_option("--duration", synth_o.duration, "Duration [s]")->capture_default_str();
  synth_cmd->add_option("--rate", synth_o.rate, "Pose rate [Hz]")->capture_default_str();
  synth_cmd->add_option("--scale", synth_o.scale, "Path size [m]")->capture_default_str();
  synth_cmd->add_option("--seed", synth_o.seed, "Motion seed")->capture_default_str();
  synth_cmd->add_option("--degrade", synth_o.degrade,
                        "Degradation applied in order: noise:st,sr | drift:st,sr | gap:t0,t1 | "
                        "truncate:t (repeatable)");
  synth_cmd->add_option("--degrade-seed", synth_o.degrade_seed,
                        "Seed of the first degradation (default: seed + 1)");
  synth_cmd->add_option("--gt-out", synth_o.gt_out, "Ground-truth file name")->capture_default_str();
  synth_cmd->add_option("--est-out", synth_o.est_out, "Estimate file name")->capture_default_str();
  add_output_dir(synth_cmd, synth_o.output_dir);

  ReportOptions report_o;
  auto* report_cmd = app.add_subcommand("report", "Evaluate every entry of a JSON benchmark config");
  report_cmd->add_option("config", report_o.config, "Report configuration (JSON)")->required();
  add_output_dir(report_cmd, report_o.output_dir);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("trajeval");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ate_cmd) return cmd_ate(ate_o, out, err);
    if (*rpe_cmd) return cmd_rpe(rpe_o, out, err);
    if (*assoc_cmd) return cmd_associate(assoc_o, out, err);
    if (*synth_cmd) return cmd_synth(synth_o, out);
    if (*report_cmd) return cmd_report(report_o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitUsage;
}

}  // namespace trajeval::cli
