#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "imf/filters.h"
#include "imf/metrics.h"
#include "imf/pbm.h"
#include "oracles.h"

namespace imf::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "imf");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> v;
  for (std::string s; std::getline(in, s);) v.push_back(s);
  return v;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("imf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& leaf) const { return (dir_ / leaf).string(); }
  fs::path dir_;
};

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  const Result r = invoke({"--set", "no_such_key=1", "perf"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("no_such_key"), std::string::npos);
  EXPECT_EQ(invoke({"--set", "vdd=abc", "perf"}).code, 2);
  EXPECT_EQ(invoke({"--set", "n=4", "perf"}).code, 2);
  EXPECT_EQ(invoke({"--out", path("x"), "denoise", "--input", path("missing.pbm")}).code, 1);
}

TEST_F(Cli, ConfigFile) {
  std::ofstream(path("run.cfg")) << "# comment\nvdd = 0.9\n\nbogus_key = 3\n";
  const Result r = invoke({"--config", path("run.cfg"), "perf"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bogus_key"), std::string::npos);
  std::ofstream(path("ok.cfg")) << "clock_hz = 70e6\n";
  EXPECT_EQ(invoke({"--config", path("ok.cfg"), "--out", path("o"), "perf"}).code, 0);
}

TEST_F(Cli, PerfSummary) {
  const Result r = invoke({"--out", path("perf"), "perf"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("134.4 GOPS"), std::string::npos);
  EXPECT_NE(r.out.find("51.3 TOPS/W"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "perf" / "perf.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "perf" / "perf.json"));
}

TEST_F(Cli, ZeroVariationMacroMatchesNomf) {
  std::mt19937_64 rng(71);
  fs::create_directories(dir_ / "in");
  std::vector<BinaryFrame> frames;
  for (int i = 0; i < 3; ++i) {
    frames.push_back(test::random_frame(240, 180, 0.3, rng));
    write_pbm_file(dir_ / "in" / ("f" + std::to_string(i) + ".pbm"), frames.back());
  }
  frames.emplace_back(240, 180);
  write_pbm_file(dir_ / "in" / "f3.pbm", frames.back());

  const Result r = invoke({"--set", "sigma_ref=0", "--set", "sigma_vtrip=0", "--out", path("imc"),
                           "simulate", "--input", path("in")});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(invoke({"--out", path("nomf"), "denoise", "--filter", "nomf", "--input", path("in")})
                .code,
            0);
  for (int i = 0; i < 4; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05d.pbm", i);
    const BinaryFrame hw = read_pbm_file(dir_ / "imc" / "frames" / name);
    EXPECT_EQ(hw, read_pbm_file(dir_ / "nomf" / "frames" / name));
    EXPECT_EQ(hw, nomf(frames[i], {3}));
  }
  const auto report = lines(dir_ / "imc" / "report.csv");
  ASSERT_EQ(report.size(), 5u);
  EXPECT_EQ(report[0],
            "frame_index,bit_errors,ber,patches,patch_errors,cycles,rho_plus_lambda,valid_frame");
  EXPECT_EQ(report[4].back(), '0');  // the empty frame
  EXPECT_EQ(report[1].back(), '1');
}

TEST_F(Cli, Characterize) {
  Result r = invoke({"--set", "trials=3", "--out", path("k0"), "characterize", "--k", "0", "--vdd",
                     "0.7"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = lines(dir_ / "k0" / "characterize.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "vdd,temp_c,corner,n,k,pattern_id,trials,ber");
  EXPECT_EQ(rows[1].substr(rows[1].rfind(',') + 1), "0");

  r = invoke({"--set", "trials=2", "--out", path("k5"), "characterize", "--vdd", "1.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(dir_ / "k5" / "characterize.csv").size(), 127u);
}

TEST_F(Cli, TrackEvalAndSelfEval) {
  ASSERT_EQ(invoke({"--set", "frames=60", "--out", path("data"), "gen", "--location", "2"}).code, 0);
  const fs::path rec = dir_ / "data" / "loc2";
  ASSERT_TRUE(fs::exists(rec / "gt.csv"));
  ASSERT_TRUE(fs::exists(rec / "events.csv"));

  const Result t = invoke({"--out", path("te"), "track-eval", "--recording", rec.string()});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("auc_difference"), std::string::npos);
  EXPECT_EQ(lines(dir_ / "te" / "track_eval.csv").size(), 10u);

  // Ground truth scored against itself pins the curve at 1.
  const Result e = invoke({"--out", path("ev"), "eval", "--pred", (rec / "gt.csv").string(), "--gt",
                           (rec / "gt.csv").string()});
  ASSERT_EQ(e.code, 0) << e.err;
  for (const std::string& row : lines(dir_ / "ev" / "eval.csv")) {
    if (row.rfind("thr", 0) == 0) continue;
    EXPECT_EQ(row.substr(row.find(',') + 1), "1");
  }
  EXPECT_NE(e.out.find("auc 0.8"), std::string::npos) << e.out;
}

TEST_F(Cli, TrackEvalCurvesAndEmptyFrames) {
  RunConfig cfg;
  cfg.synthetic.frames = 80;
  const auto data = synthetic_dataset(cfg, {1});
  const TrackEvalResult r = track_eval(data, cfg);
  EXPECT_EQ(r.omf.thresholds.size(), 9u);
  EXPECT_GE(r.omf.auc, 0.0);
  EXPECT_LE(r.omf.auc, 0.8);
  std::vector<RecordingInput> same = data;
  same[0].frames.assign(same[0].frames.size(), BinaryFrame(240, 180));
  const TrackEvalResult empty = track_eval(same, cfg);
  EXPECT_DOUBLE_EQ(empty.auc_difference(), 0.0);
}

TEST_F(Cli, RerunsAreByteIdentical) {
  for (const char* run_dir : {"a", "b"}) {
    const std::string out = path(run_dir);
    ASSERT_EQ(invoke({"--seed", "5", "--set", "frames=40", "--out", out, "gen", "--location", "1"})
                  .code,
              0);
    ASSERT_EQ(invoke({"--seed", "5", "--out", out, "simulate", "--input",
                      out + "/loc1/events.csv"})
                  .code,
              0);
    ASSERT_EQ(invoke({"--seed", "5", "--set", "trials=2", "--out", out, "characterize", "--vdd",
                      "0.7"})
                  .code,
              0);
  }
  for (const char* leaf : {"loc1/gt.csv", "loc1/events.csv", "report.csv", "characterize.csv",
                           "frames/frame_00039.pbm"}) {
    const std::string a = slurp(dir_ / "a" / leaf);
    EXPECT_FALSE(a.empty()) << leaf;
    EXPECT_EQ(a, slurp(dir_ / "b" / leaf)) << leaf;
  }
}

}  // namespace
}  // namespace imf::cli
