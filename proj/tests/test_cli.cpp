#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "json.hpp"
#include "record.hpp"
#include "support/cli_harness.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "trajeval/trajectory_io.hpp"

namespace {

namespace fs = std::filesystem;
using harness::run;
using harness::slurp;
using harness::spit;

std::string line_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return line;
  return {};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fixtures::temp_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, SynthLineFixture) {
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "est.txt",
                           {"--shape", "line", "--duration", "1", "--rate", "2"}),
            0);
  EXPECT_EQ(slurp(path("gt.txt")),
            "# timestamp tx ty tz qx qy qz qw\n"
            "0.000000 0.000000 0.000000 0.000000 0.000000 0.000000 0.000000 1.000000\n"
            "0.500000 0.500000 0.000000 0.000000 0.000000 0.000000 0.000000 1.000000\n"
            "1.000000 1.000000 0.000000 0.000000 0.000000 0.000000 0.000000 1.000000\n");
  EXPECT_FALSE(fs::exists(path("est.txt")));
}

TEST_F(Cli, SynthGapAndDeterminism) {
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "est.txt",
                           {"--shape", "circle", "--seed", "7", "--degrade", "gap:4,6",
                            "--degrade", "noise:0.01,0.01"}),
            0);
  const trajeval::Trajectory est = trajeval::load_tum(path("est.txt"));
  for (const auto& p : est.poses) EXPECT_TRUE(p.timestamp < 4.0 || p.timestamp > 6.0);
  const std::string first = slurp(path("est.txt"));
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "est.txt",
                           {"--shape", "circle", "--seed", "7", "--degrade", "gap:4,6",
                            "--degrade", "noise:0.01,0.01"}),
            0);
  EXPECT_EQ(slurp(path("est.txt")), first);
}

TEST_F(Cli, SynthValidation) {
  EXPECT_EQ(harness::synth(dir_, "g.txt", "e.txt", {"--shape", "spiral"}), 1);
  EXPECT_EQ(harness::synth(dir_, "g.txt", "e.txt", {"--degrade", "gap:6,4"}), 1);
  EXPECT_EQ(harness::synth(dir_, "g.txt", "e.txt", {"--degrade", "wobble:1"}), 1);
  EXPECT_EQ(harness::synth(dir_, "g.txt", "e.txt", {"--duration", "-1"}), 1);
  EXPECT_EQ(run({"synth", "--bogus-flag"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}

TEST_F(Cli, OutputsNeverEscapeTheOutputDirectory) {
  EXPECT_EQ(harness::synth(dir_, "../escape.txt", "e.txt", {}), 1);
  EXPECT_FALSE(fs::exists(dir_.parent_path() / "escape.txt"));
  EXPECT_EQ(harness::synth(dir_, "/tmp/trajeval_abs_escape.txt", "e.txt", {}), 1);
  EXPECT_EQ(harness::synth(dir_, "sub/../../escape.txt", "e.txt", {}), 1);
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "e.txt", {}), 0);
  EXPECT_EQ(run({"ate", path("gt.txt"), path("gt.txt"), "--output-dir", path(""), "--plot",
                 "../plot.svg"})
                .code,
            1);
  EXPECT_EQ(run({"associate", path("gt.txt"), path("gt.txt"), "--output-dir", path(""),
                 "--output", "../pairs.txt"})
                .code,
            1);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const fs::path env_dir = dir_ / "from_env";
  fs::create_directories(env_dir);
  ::setenv("TRAJEVAL_OUTPUT_DIR", env_dir.c_str(), 1);
  const int code = run({"synth", "--gt-out", "gt.txt"}).code;
  const int flag_code = run({"synth", "--gt-out", "gt2.txt", "--output-dir", path("")}).code;
  ::unsetenv("TRAJEVAL_OUTPUT_DIR");
  EXPECT_EQ(code, 0);
  EXPECT_EQ(flag_code, 0);
  EXPECT_TRUE(fs::exists(env_dir / "gt.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "gt2.txt"));
  EXPECT_FALSE(fs::exists(env_dir / "gt2.txt"));
}

TEST_F(Cli, AteSameFileIsZero) {
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "e.txt", {"--shape", "figure_eight"}), 0);
  const auto r = run({"ate", path("gt.txt"), path("gt.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("absolute_translational_error.rmse    0.000000 m"), std::string::npos)
      << r.out;
  EXPECT_EQ(r.err.find("warning"), std::string::npos) << r.err;
}

TEST_F(Cli, AteJsonRoundTripsThroughRecord) {
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "est.txt",
                           {"--shape", "circle", "--degrade", "noise:0.02,0.01"}),
            0);
  const auto r = run({"ate", path("gt.txt"), path("est.txt"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(harness::count_lines(r.out), 1u);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema"), "trajeval.evaluation_record/1");
  EXPECT_TRUE(j.contains("alignment"));
  const trajeval::cli::EvaluationRecord rec = trajeval::cli::record_from_json(j);
  EXPECT_EQ(rec.status, "ok");
  ASSERT_TRUE(rec.ate.has_value());
  EXPECT_GT(rec.ate->rmse, 0.0);
  nlohmann::ordered_json again = trajeval::cli::to_json(rec);
  nlohmann::ordered_json original = nlohmann::ordered_json::parse(r.out);
  original.erase("alignment");
  EXPECT_EQ(again.dump(), original.dump());
}

TEST_F(Cli, AtePlotWritesSvg) {
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "est.txt", {"--degrade", "drift:0.01,0.001"}), 0);
  const auto r = run({"ate", path("gt.txt"), path("est.txt"), "--output-dir", path(""), "--plot",
                      "ate.svg"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string svg = slurp(path("ate.svg"));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST_F(Cli, DisjointRangesExitThree) {
  spit(path("a.txt"), "0 0 0 0 0 0 0 1\n1 1 0 0 0 0 0 1\n");
  spit(path("b.txt"), "100 0 0 0 0 0 0 1\n101 1 0 0 0 0 0 1\n");
  const auto r = run({"ate", path("a.txt"), path("b.txt")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("[0.000000, 1.000000]"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("[100.000000, 101.000000]"), std::string::npos) << r.err;
}

TEST_F(Cli, ExitCodeContract) {
  spit(path("ok.txt"), "0 0 0 0 0 0 0 1\n1 1 0 0 0 0 0 1\n2 2 1 0 0 0 0 1\n");
  spit(path("bad.txt"), "0 0 0 0 0 0 0 1\n1 1 0 zero 0 0 0 1\n");
  spit(path("one.txt"), "0 0 0 0 0 0 0 1\n");
  spit(path("still.txt"), "0 1 1 1 0 0 0 1\n1 1 1 1 0 0 0 1\n2 1 1 1 0 0 0 1\n");
  EXPECT_EQ(run({"ate", path("ok.txt"), path("ok.txt")}).code, 0);
  EXPECT_EQ(run({"ate", path("ok.txt")}).code, 1);
  EXPECT_EQ(run({"ate", path("ok.txt"), path("ok.txt"), "--max-diff", "-1"}).code, 1);
  EXPECT_EQ(run({"ate", path("ok.txt"), path("ok.txt"), "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"ate", path("ok.txt"), path("missing.txt")}).code, 2);
  const auto parse = run({"ate", path("ok.txt"), path("bad.txt")});
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.err.find("line 2"), std::string::npos) << parse.err;
  EXPECT_EQ(run({"ate", path("one.txt"), path("one.txt")}).code, 4);
  EXPECT_EQ(run({"ate", path("ok.txt"), path("still.txt")}).code, 4);
  EXPECT_EQ(run({"rpe", path("ok.txt"), path("ok.txt"), "--delta", "5"}).code, 4);
  EXPECT_EQ(run({"rpe", path("ok.txt"), path("ok.txt"), "--delta-unit", "parsecs"}).code, 1);
}

TEST_F(Cli, CoverageWarning) {
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "gap.txt",
                           {"--shape", "circle", "--duration", "120", "--degrade", "gap:50,70"}),
            0);
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "full.txt",
                           {"--shape", "circle", "--duration", "120", "--degrade", "noise:0.01,0"}),
            0);
  const auto gap = run({"ate", path("gt.txt"), path("gap.txt")});
  EXPECT_EQ(gap.code, 0);
  EXPECT_NE(gap.err.find("warning: the estimate covers only 83.3%"), std::string::npos) << gap.err;
  const auto full = run({"ate", path("gt.txt"), path("full.txt")});
  EXPECT_EQ(full.code, 0);
  EXPECT_NE(full.out.find("coverage.temporal          1.000000"), std::string::npos) << full.out;
  EXPECT_EQ(full.err.find("warning"), std::string::npos) << full.err;
}

TEST_F(Cli, RpeIdenticalAndFullSpanWarning) {
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "est.txt", {"--degrade", "drift:0.01,0.01"}), 0);
  const auto same = run({"rpe", path("gt.txt"), path("gt.txt")});
  EXPECT_EQ(same.code, 0);
  EXPECT_NE(same.out.find("translational_error.rmse    0.000000 m"), std::string::npos) << same.out;
  EXPECT_NE(same.out.find("rotational_error.rmse    0.000000 rad"), std::string::npos) << same.out;

  const auto span = run({"rpe", path("gt.txt"), path("est.txt"), "--delta", "n"});
  EXPECT_EQ(span.code, 0);
  EXPECT_NE(span.err.find("penalizes rotational errors in the beginning"), std::string::npos);
  const auto normal = run({"rpe", path("gt.txt"), path("est.txt"), "--delta", "30"});
  EXPECT_EQ(normal.err.find("penalizes"), std::string::npos);
  const auto secs = run({"rpe", path("gt.txt"), path("est.txt"), "--delta", "1", "--delta-unit",
                         "seconds"});
  EXPECT_EQ(secs.code, 0);
  // At 30 Hz one second and thirty frames select the same couples.
  for (const char* key : {"relative_pose_couples", "translational_error.rmse",
                          "rotational_error.rmse"}) {
    EXPECT_EQ(line_starting(secs.out, key), line_starting(normal.out, key)) << key;
    EXPECT_FALSE(line_starting(secs.out, key).empty()) << key;
  }
}

TEST_F(Cli, RpeAllMatchesExhaustiveOracle) {
  const auto gt = fixtures::random_trajectory(21, 6);
  auto est = fixtures::random_trajectory(22, 6);
  trajeval::save_tum(gt, path("gt.txt"));
  trajeval::save_tum(est, path("est.txt"));
  // Oracle evaluated on what the files hold.
  const auto gt_back = trajeval::load_tum(path("gt.txt"));
  const auto est_back = trajeval::load_tum(path("est.txt"));
  const oracle::RmsePair o =
      oracle::rpe_all_deltas(fixtures::to_m4(gt_back), fixtures::to_m4(est_back));
  const auto r = run({"rpe", path("gt.txt"), path("est.txt"), "--delta-unit", "all", "--format",
                      "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("all_deltas").at("exact").get<bool>());
  EXPECT_EQ(j.at("all_deltas").at("couples").get<int>(), 15);
  EXPECT_NEAR(j.at("all_deltas").at("trans_rmse").get<double>(), o.trans, 1e-12);
  EXPECT_NEAR(j.at("all_deltas").at("rot_rmse").get<double>(), o.rot, 1e-12);
  EXPECT_TRUE(j.at("parameters").at("delta").is_null());
}

TEST_F(Cli, AssociateIdenticalAndOffset) {
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "e.txt", {"--duration", "2", "--rate", "10"}), 0);
  const auto same = run({"associate", path("gt.txt"), path("gt.txt")});
  ASSERT_EQ(same.code, 0);
  EXPECT_EQ(harness::count_lines(same.out), 21u);
  std::istringstream in(same.out);
  std::string a, b;
  while (in >> a >> b) EXPECT_EQ(a, b);

  std::string shifted;
  for (int k = 0; k <= 20; ++k) {
    shifted += trajeval::format_fixed(k / 10.0 + 0.01) + " 0 0 0 0 0 0 1\n";
  }
  spit(path("shifted.txt"), shifted);
  const auto off = run({"associate", path("gt.txt"), path("shifted.txt"), "--max-diff", "0.005"});
  EXPECT_EQ(off.code, 3);
  EXPECT_TRUE(off.out.empty());
  const auto fixed = run({"associate", path("gt.txt"), path("shifted.txt"), "--max-diff", "0.005",
                          "--offset", "0.01"});
  EXPECT_EQ(fixed.code, 0);
  EXPECT_EQ(harness::count_lines(fixed.out), 21u);
}

TEST_F(Cli, AssociateMatchesBipartiteOracleCount) {
  ASSERT_EQ(harness::synth(dir_, "gt100.txt", "e.txt", {"--rate", "100", "--duration", "10"}), 0);
  ASSERT_EQ(harness::synth(dir_, "cam.txt", "cam_gap.txt",
                           {"--rate", "30", "--duration", "10", "--degrade", "gap:4,6"}),
            0);
  const auto gt = trajeval::load_tum(path("gt100.txt"));
  const auto est = trajeval::load_tum(path("cam_gap.txt"));
  std::vector<std::vector<double>> cost(est.size(), std::vector<double>(gt.size(), INFINITY));
  for (std::size_t i = 0; i < est.size(); ++i)
    for (std::size_t j = 0; j < gt.size(); ++j) {
      const double d = std::abs(gt.poses[j].timestamp - est.poses[i].timestamp);
      if (d <= 0.02) cost[i][j] = d;
    }
  std::size_t oracle_count = 0;
  for (int c : oracle::hungarian(cost)) oracle_count += c >= 0;
  const auto r = run({"associate", path("gt100.txt"), path("cam_gap.txt"), "--output-dir",
                      path(""), "--output", "pairs.txt"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(harness::count_lines(slurp(path("pairs.txt"))), oracle_count);
  EXPECT_EQ(oracle_count, est.size());
}

// --- report ---------------------------------------------------------------

std::string two_by_two_config(const fs::path& dir) {
  for (const char* seq : {"seq_a", "seq_b"}) {
    const std::string s(seq);
    const std::string seed = s == "seq_a" ? "1" : "2";
    EXPECT_EQ(harness::synth(dir, s + "_gt.txt", s + "_good.txt",
                             {"--shape", "figure_eight", "--duration", "20", "--seed", seed,
                              "--degrade", "drift:0.002,0.0005"}),
              0);
    EXPECT_EQ(harness::synth(dir, s + "_gt.txt", s + "_trunc.txt",
                             {"--shape", "figure_eight", "--duration", "20", "--seed", seed,
                              "--degrade", "noise:0.01,0.005", "--degrade", "truncate:10"}),
              0);
  }
  return R"({
  "association": {"max_diff": 0.02},
  "rpe": {"delta": 1, "delta_unit": "seconds"},
  "entries": [
    {"algorithm": "good", "sequence": "seq_a", "estimate": "seq_a_good.txt", "groundtruth": "seq_a_gt.txt", "external_runtime_seconds": 12.5},
    {"algorithm": "good", "sequence": "seq_b", "estimate": "seq_b_good.txt", "groundtruth": "seq_b_gt.txt", "external_runtime_seconds": 14.0},
    {"algorithm": "truncated", "sequence": "seq_a", "estimate": "seq_a_trunc.txt", "groundtruth": "seq_a_gt.txt"},
    {"algorithm": "truncated", "sequence": "seq_b", "estimate": "seq_b_trunc.txt", "groundtruth": "seq_b_gt.txt"}
  ]
})";
}

TEST_F(Cli, ReportTwoByTwo) {
  spit(path("config.json"), two_by_two_config(dir_));
  const auto r = run({"report", path("config.json"), "--output-dir", path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("out/summary.csv"));
  EXPECT_EQ(harness::count_lines(csv), 5u);  // header + 4 rows
  EXPECT_EQ(csv.rfind("algorithm,sequence,status", 0), 0u);
  std::size_t flagged = 0;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("truncated,", 0) == 0) {
      EXPECT_NE(line.find("LOW_COVERAGE"), std::string::npos) << line;
      ++flagged;
    } else if (line.rfind("good,", 0) == 0) {
      EXPECT_EQ(line.find("LOW_COVERAGE"), std::string::npos) << line;
    }
  }
  EXPECT_EQ(flagged, 2u);

  const auto rec_json = nlohmann::json::parse(slurp(path("out/records/truncated__seq_a.json")));
  const auto rec = trajeval::cli::record_from_json(rec_json);
  ASSERT_TRUE(rec.coverage.has_value());
  EXPECT_NEAR(rec.coverage->temporal_coverage, 0.5, 1.0 / (30.0 * 20.0));
  EXPECT_TRUE(rec.low_coverage());
  EXPECT_FALSE(rec_json.contains("wall_time_seconds"));

  EXPECT_TRUE(fs::exists(path("out/summary.json")));
  EXPECT_TRUE(fs::exists(path("out/timings.csv")));
  const std::string svg = slurp(path("out/benchmark.svg"));
  EXPECT_NE(svg.find("external"), std::string::npos);
  EXPECT_NE(r.err.find("truncated / seq_a"), std::string::npos);
}

TEST_F(Cli, ReportIsByteIdenticalOnRerun) {
  spit(path("config.json"), two_by_two_config(dir_));
  ASSERT_EQ(run({"report", path("config.json"), "--output-dir", path("run1")}).code, 0);
  ASSERT_EQ(run({"report", path("config.json"), "--output-dir", path("run2")}).code, 0);
  for (const char* f : {"summary.csv", "summary.json", "benchmark.svg",
                        "records/good__seq_a.json", "records/truncated__seq_b.json"}) {
    EXPECT_EQ(slurp(dir_ / "run1" / f), slurp(dir_ / "run2" / f)) << f;
  }
}

TEST_F(Cli, ReportFailuresAndConfigErrors) {
  ASSERT_EQ(harness::synth(dir_, "gt.txt", "est.txt", {"--degrade", "noise:0.01,0"}), 0);
  spit(path("partial.json"), R"({"entries": [
    {"algorithm": "a", "sequence": "s", "estimate": "est.txt", "groundtruth": "gt.txt"},
    {"algorithm": "b", "sequence": "s", "estimate": "missing.txt", "groundtruth": "gt.txt"}]})");
  const auto partial = run({"report", path("partial.json"), "--output-dir", path("p")});
  EXPECT_EQ(partial.code, 0) << partial.err;
  const auto failed = trajeval::cli::record_from_json(
      nlohmann::json::parse(slurp(path("p/records/b__s.json"))));
  EXPECT_EQ(failed.status, "error");
  EXPECT_FALSE(failed.error.empty());

  spit(path("allfail.json"), R"({"entries": [
    {"algorithm": "b", "sequence": "s", "estimate": "missing.txt", "groundtruth": "gt.txt"}]})");
  EXPECT_NE(run({"report", path("allfail.json"), "--output-dir", path("f")}).code, 0);

  spit(path("typo.json"), R"({"entires": []})");
  EXPECT_EQ(run({"report", path("typo.json")}).code, 2);
  spit(path("typo2.json"), R"({"entries": [
    {"algorithm": "a", "sequence": "s", "estimate": "est.txt", "groundtruth": "gt.txt", "runtime": 3}]})");
  EXPECT_EQ(run({"report", path("typo2.json")}).code, 2);
  spit(path("dup.json"), R"({"entries": [
    {"algorithm": "a", "sequence": "s", "estimate": "est.txt", "groundtruth": "gt.txt"},
    {"algorithm": "a", "sequence": "s", "estimate": "est.txt", "groundtruth": "gt.txt"}]})");
  EXPECT_EQ(run({"report", path("dup.json")}).code, 2);
  spit(path("empty_label.json"), R"({"entries": [
    {"algorithm": "", "sequence": "s", "estimate": "est.txt", "groundtruth": "gt.txt"}]})");
  EXPECT_EQ(run({"report", path("empty_label.json")}).code, 2);
  spit(path("broken.json"), "{ not json");
  EXPECT_EQ(run({"report", path("broken.json")}).code, 2);
  EXPECT_EQ(run({"report", path("nowhere.json")}).code, 2);
}

TEST(Record, CsvHeaderAndNumbers) {
  EXPECT_EQ(trajeval::cli::format_number(0.1), "0.1");
  EXPECT_EQ(trajeval::cli::format_number(-0.0), "0");
  trajeval::cli::EvaluationRecord r;
  r.algorithm = "alg,with comma";
  r.sequence = "s";
  r.status = "error";
  r.error = "boom";
  const std::string csv = trajeval::cli::records_to_csv({r});
  EXPECT_EQ(harness::count_lines(csv), 2u);
  EXPECT_NE(csv.find("\"alg,with comma\""), std::string::npos) << csv;
}

}  // namespace
