#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kGolden = GABOR_GOLDEN_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gabor::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return kGolden + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gabor_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST(Cli, LambdaBuildToStdout) {
  const auto r = run({"lambda-build", "--eps", "0.5", "--N", "1", "--out", "-"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["density"], "4/3");
  EXPECT_EQ(j["N1"], 2);
  // manifest goes to the diagnostic stream
  const auto m = json::parse(r.err);
  EXPECT_EQ(m["command"], "lambda-build");
  EXPECT_EQ(m["exit_code"], 0);
}

TEST_F(CliFiles, LambdaBuildWritesManifest) {
  const auto out = path("set.json");
  EXPECT_EQ(run({"lambda-build", "--eps", "0.5", "--N", "1", "--out", out}).code, 0);
  EXPECT_EQ(json::parse(slurp(out))["density"], "4/3");
  const auto m = json::parse(slurp(out + ".manifest.json"));
  for (const char* key : {"command", "parameters", "seed", "tool_version", "outputs", "wall_time_s", "timestamp"})
    EXPECT_TRUE(m.contains(key)) << key;
  EXPECT_EQ(m["outputs"][0], out);
  EXPECT_EQ(m["parameters"]["eps"], "0.5");
}

TEST(Cli, InvalidOverrideIsInputError) {
  EXPECT_EQ(run({"lambda-build", "--eps", "0.5", "--N", "1", "--delta", "0.9"}).code, 2);
}

TEST(Cli, DetVerifyVandermonde) {
  const auto r = run({"det-verify", "--N", "3", "--trials", "200", "--seed", "42", "--out", "-"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_LT(j["max_rel_error"].get<double>(), 1e-9);
  EXPECT_EQ(json::parse(r.err)["seed"], 42);
}

TEST(Cli, WindowCheckExitCodes) {
  EXPECT_EQ(run({"window-check", "--spec", golden("imaginary.json")}).code, 2);
  EXPECT_EQ(run({"window-check", "--spec", golden("cauchy.json")}).code, 0);
  const auto r = run({"window-check", "--spec", golden("counterexample.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NEAR(json::parse(r.out)["witness"].get<double>(), -0.5, 1e-6);
  EXPECT_EQ(run({"window-check", "--spec", golden("does_not_exist.json")}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"lambda-build", "--eps", "0.5"}).code, 2);
  EXPECT_EQ(run({"lambda-build", "--eps", "x", "--N", "1"}).code, 2);
}

TEST(Cli, DeterministicOutputs) {
  const std::vector<std::vector<std::string>> cases{
      {"det-verify", "--N", "2", "--trials", "50", "--seed", "7"},
      {"trick-verify", "--trials", "10", "--seed", "3"},
      {"symbols-table", "--spec", golden("mixed.json")},
      {"frame-estimate", "--spec", golden("two_three.json"), "--eps", "0.5", "--xi-steps", "16"},
  };
  for (auto args : cases) {
    args.push_back("--out");
    args.push_back("-");
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code) << args[0];
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

TEST(Cli, EverySubcommandWritesToStdout) {
  const std::vector<std::vector<std::string>> cases{
      {"lambda-build", "--eps", "1", "--N", "2"},
      {"window-check", "--spec", golden("cauchy.json")},
      {"symbols-table", "--spec", golden("double_pole.json")},
      {"det-verify", "--N", "1", "--trials", "5"},
      {"trick-verify", "--k", "3", "--trials", "5"},
      {"frame-oracle", "--spec", golden("cauchy.json"), "--eps", "0.5", "--xi-steps", "8", "--lambda-range", "6",
       "--n-shift", "6"},
      {"fd-verify", "--spec", golden("double_pole.json")},
  };
  for (auto args : cases) {
    args.push_back("--out");
    args.push_back("-");
    const auto r = run(args);
    EXPECT_NE(r.code, 2) << args[0] << ": " << r.err;
    EXPECT_TRUE(json::accept(r.out)) << args[0];
  }
  const auto fe = run({"frame-estimate", "--spec", golden("cauchy.json"), "--eps", "0.5", "--xi-steps", "8", "--out", "-"});
  EXPECT_EQ(fe.code, 0);
  EXPECT_EQ(fe.out.substr(0, fe.out.find('\n')), "xi,sigma_min,sigma_max");
  EXPECT_NE(fe.err.find("summary: "), std::string::npos);
}

TEST_F(CliFiles, FrameEstimateFiles) {
  const auto out = path("fe.csv");
  EXPECT_EQ(run({"frame-estimate", "--spec", golden("two_three.json"), "--eps", "0.5", "--xi-steps", "16", "--out", out}).code, 0);
  const auto s = json::parse(slurp(out + ".summary.json"));
  EXPECT_GT(s["A_est"].get<double>(), 0.0);
  EXPECT_EQ(s["xi_steps"], 16);
  EXPECT_EQ(json::parse(slurp(out + ".manifest.json"))["outputs"].size(), 2u);
}

TEST_F(CliFiles, SubCriticalSetFromFile) {
  const auto set = path("two.json");
  std::ofstream(set) << R"({"base_points":[0],"period":2})";
  const auto r = run({"frame-estimate", "--spec", golden("cauchy.json"), "--set", set, "--xi-steps", "8",
                      "--summary", path("s.json"), "--out", path("fe.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(slurp(path("s.json")))["A_est"], 0.0);
}

TEST_F(CliFiles, SegmentDumpMatchesGolden) {
  const auto dump = path("segments.json");
  const auto r = run({"det-verify", "--spec", golden("two_three.json"), "--eps", "0.5", "--xi", "0.37", "--periods",
                      "2", "--dump", dump, "--out", "-"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto got = json::parse(slurp(dump));
  const auto want = json::parse(slurp(golden("segments_two_three.json")));
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t s = 0; s < got.size(); ++s) {
    EXPECT_EQ(got[s]["rows"].size(), want[s]["rows"].size());
    for (std::size_t i = 0; i < got[s]["rows"].size(); ++i) {
      EXPECT_EQ(got[s]["rows"][i]["b"], want[s]["rows"][i]["b"]);
      EXPECT_EQ(got[s]["rows"][i]["role"], want[s]["rows"][i]["role"]);
    }
    const auto& gm = got[s]["matrix"];
    const auto& wm = want[s]["matrix"];
    ASSERT_EQ(gm.size(), wm.size());
    for (std::size_t i = 0; i < gm.size(); ++i)
      for (std::size_t c = 0; c < gm[i].size(); ++c)
        for (int k = 0; k < 2; ++k) {
          const double x = gm[i][c][k], y = wm[i][c][k];
          EXPECT_NEAR(x, y, 1e-12 * std::max(1.0, std::abs(y)));
        }
  }
}

TEST_F(CliFiles, SegmentVerification) {
  EXPECT_EQ(run({"det-verify", "--segments", golden("segments_two_three.json"), "--out", "-"}).code, 0);
  // an entry above the tail diagonal breaks the block-triangular factorization
  auto doc = json::parse(slurp(golden("segments_two_three.json")));
  doc[0]["matrix"][0][4] = json::array({5.0, 0.0});
  const auto bad = path("bad.json");
  std::ofstream(bad) << doc.dump();
  EXPECT_EQ(run({"det-verify", "--segments", bad, "--out", "-"}).code, 1);
  std::ofstream(path("junk.json")) << R"({"xi": 0.3})";
  EXPECT_EQ(run({"det-verify", "--segments", path("junk.json"), "--out", "-"}).code, 2);
}

TEST(Cli, FdVerifyReportsRatios) {
  const auto r = run({"fd-verify", "--spec", golden("mixed.json"), "--out", "-"});
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["error_ratios"].size(), 2u);
  for (const auto& x : j["error_ratios"]) {
    EXPECT_GT(x.get<double>(), 1.7);
    EXPECT_LT(x.get<double>(), 2.3);
  }
}

TEST(Cli, Version) {
  const auto r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find('.'), std::string::npos);
}
