#include "spacesplit_cli/commands.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace spacesplit::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spacesplit_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                ->current_test_info()
                                                ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "spacesplit");
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SensitivityStablePerturbationHasZeroUnstablePart) {
  ASSERT_EQ(run({"sensitivity", "--map", "baker", "--s", "0,0,0,0", "--param", "4", "--N",
                 "20000", "--runup", "1200", "--out", path("r.json")}),
            kExitOk)
      << err_.str();
  const auto j = nlohmann::json::parse(slurp(path("r.json")));
  EXPECT_EQ(j["unstable"].get<double>(), 0.0);
  EXPECT_EQ(j["param_index"].get<int>(), 4);
  EXPECT_EQ(j["per_k_terms"].size(), 11u);
  for (const char* key : {"s", "K", "N", "seed", "stable", "total", "stderr_stable",
                          "stderr_unstable", "config"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_NEAR(j["stable"].get<double>(), -1.0, 0.05);
}

TEST_F(CliTest, MissingParameterIsConfigError) {
  EXPECT_EQ(run({"sensitivity", "--N", "100"}), kExitConfigError);
  std::ofstream(path("c.json")) << R"({"map": "baker", "s": [0, 0, 0, 0], "N": 100})";
  EXPECT_EQ(run({"sensitivity", "--config", path("c.json")}), kExitConfigError);
}

TEST_F(CliTest, BadConfigsAreRejected) {
  EXPECT_EQ(run({"sensitivity", "--param", "1", "--map", "henon"}), kExitConfigError);
  EXPECT_EQ(run({"sensitivity", "--param", "1", "--observable", "sin"}), kExitConfigError);
  EXPECT_EQ(run({"sensitivity", "--param", "5"}), kExitConfigError);
  EXPECT_EQ(run({"sensitivity", "--param", "1", "--s", "0,0"}), kExitConfigError);
  EXPECT_EQ(run({"sensitivity", "--param", "1", "--K", "0"}), kExitConfigError);
  EXPECT_EQ(run({"sensitivity", "--param", "1", "--runup", "-1"}), kExitConfigError);
  EXPECT_EQ(run({"validate", "--param", "1", "--N", "0"}), kExitConfigError);
  EXPECT_EQ(run({"validate", "--param", "1", "--oracle-delta", "0"}), kExitConfigError);
  EXPECT_EQ(run({"sensitivity", "--param", "1", "--bogus"}), kExitConfigError);
  EXPECT_EQ(run({}), kExitConfigError);
  std::ofstream(path("bad.json")) << "{not json";
  EXPECT_EQ(run({"sensitivity", "--config", path("bad.json")}), kExitConfigError);
  std::ofstream(path("unknown.json")) << R"({"param": 1, "colour": "red"})";
  EXPECT_EQ(run({"sensitivity", "--config", path("unknown.json")}), kExitConfigError);
  std::ofstream(path("typed.json")) << R"({"param": 1, "N": "many"})";
  EXPECT_EQ(run({"sensitivity", "--config", path("typed.json")}), kExitConfigError);
}

TEST_F(CliTest, NonFiniteOrbitIsNumericalError) {
  EXPECT_EQ(run({"sensitivity", "--param", "1", "--s", "1.7e308,1.7e308,0,0", "--N", "10"}),
            kExitNumericalError);
}

TEST_F(CliTest, SameSeedGivesIdenticalBytesAndConfigRoundTrips) {
  const std::vector<std::string> base{"sensitivity", "--s", "0.1,0,0.1,0", "--direction",
                                      "1,0,1,0", "--N", "5000", "--seed", "17"};
  auto a = base;
  a.insert(a.end(), {"--out", path("a.json")});
  auto b = base;
  b.insert(b.end(), {"--out", path("a2.json")});
  ASSERT_EQ(run(a), kExitOk);
  const std::string first = slurp(path("a.json"));
  ASSERT_EQ(run(a), kExitOk);
  EXPECT_EQ(slurp(path("a.json")), first);

  // Re-running from the embedded config reproduces the artifact.
  fs::copy_file(path("a.json"), path("prior.json"));
  ASSERT_EQ(run({"sensitivity", "--config", path("prior.json")}), kExitOk);
  EXPECT_EQ(slurp(path("a.json")), first);

  const auto j = nlohmann::json::parse(first);
  EXPECT_TRUE(j["param_index"].is_null());
  EXPECT_EQ(j["config"]["seed"].get<int>(), 17);
  EXPECT_NE(j["stable"].get<double>(), 0.0);
  EXPECT_NE(j["unstable"].get<double>(), 0.0);
}

TEST_F(CliTest, FloatsUseSeventeenSignificantDigits) {
  ASSERT_EQ(run({"sensitivity", "--param", "1", "--s", "0.1,0,0,0", "--N", "2000", "--out",
                 path("r.json")}),
            kExitOk);
  const std::string text = slurp(path("r.json"));
  const auto pos = text.find("\"total\": ");
  ASSERT_NE(pos, std::string::npos);
  const std::string number = text.substr(pos + 9, text.find(',', pos) - pos - 9);
  std::string digits;
  for (char ch : number.substr(0, number.find('e'))) {
    if (std::isdigit(static_cast<unsigned char>(ch))) digits += ch;
  }
  digits.erase(0, digits.find_first_not_of('0'));
  EXPECT_EQ(digits.size(), 17u) << number;
}

TEST_F(CliTest, DiagnosticsAndDumps) {
  ASSERT_EQ(run({"sensitivity", "--param", "3", "--s", "0.1,0.1,0.1,0.1", "--N", "300",
                 "--diagnostics", "--frames", path("f.csv"), "--trajectory", path("t.csv"),
                 "--out", path("r.json")}),
            kExitOk)
      << err_.str();
  const auto j = nlohmann::json::parse(slurp(path("r.json")));
  EXPECT_LT(j["diagnostics"]["max_abs_c_minus_a_g_plus_b"].get<double>(), 1e-8);
  std::istringstream frames(slurp(path("f.csv")));
  std::string line;
  std::getline(frames, line);
  EXPECT_EQ(line, "n,q1,q2,alpha,v1,v2,a,p1,p2,y1,y2,c,w1,w2,gamma,g,b");
  int rows = 0;
  while (std::getline(frames, line)) ++rows;
  EXPECT_EQ(rows, 300);
  std::istringstream traj(slurp(path("t.csv")));
  std::getline(traj, line);
  EXPECT_EQ(line, "n,x1,x2");
  std::getline(traj, line);
  EXPECT_EQ(line.substr(0, 5), "-100,");
  EXPECT_TRUE(fs::exists(path("f.csv.config.json")));
}

TEST_F(CliTest, ValidateAllSingleParametersAtZero) {
  for (const char* p : {"1", "2", "3", "4"}) {
    EXPECT_EQ(run({"validate", "--param", p, "--N", "200000", "--orbits", "40",
                   "--orbit-length", "100000", "--out", path("v.json")}),
              kExitOk)
        << "param " << p << "\n" << out_.str();
    const auto j = nlohmann::json::parse(slurp(path("v.json")));
    EXPECT_TRUE(j["pass"].get<bool>());
    ASSERT_EQ(j["points"].size(), 1u);
    for (const char* key : {"s", "s3_total", "fd", "tol", "pass"}) {
      EXPECT_TRUE(j["points"][0].contains(key)) << key;
    }
  }
}

TEST_F(CliTest, ValidateReportsFailureWithExitOne) {
  // A wildly truncated S3 run (K = 1) misses the lagged correlations of s1.
  EXPECT_EQ(run({"validate", "--param", "1", "--K", "1", "--N", "200000", "--orbits", "40",
                 "--orbit-length", "100000"}),
            kExitCheckFailed);
}

TEST_F(CliTest, VarianceProfileGrows) {
  ASSERT_EQ(run({"variance-profile", "--param", "1", "--s", "0,0,0.1,0", "--K", "9",
                 "--ensemble", "20000", "--out", path("v.csv")}),
            kExitOk);
  std::istringstream is(slurp(path("v.csv")));
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "k,mean,variance");
  std::vector<double> var;
  while (std::getline(is, line)) var.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  ASSERT_EQ(var.size(), 9u);
  EXPECT_GT(std::log(var[8] / var[2]) / 6.0, 0.0);
}

TEST_F(CliTest, HistogramAndResponseCurveCsv) {
  ASSERT_EQ(run({"histogram", "--s", "0,0,0.2,0", "--N", "10000", "--bins", "10", "--out",
                 path("h.csv")}),
            kExitOk);
  std::istringstream h(slurp(path("h.csv")));
  std::string line;
  std::getline(h, line);
  EXPECT_EQ(line, "ix,iy,x1_lo,x2_lo,probability");
  int rows = 0;
  while (std::getline(h, line)) ++rows;
  EXPECT_EQ(rows, 100);
  EXPECT_TRUE(fs::exists(path("h.csv.config.json")));

  ASSERT_EQ(run({"response-curve", "--param", "1", "--grid", "-0.1,0,0.1", "--orbits", "4",
                 "--orbit-length", "1000", "--workers", "2", "--out", path("c.csv")}),
            kExitOk);
  const std::string first = slurp(path("c.csv"));
  EXPECT_EQ(first.substr(0, first.find('\n')), "s,mean,stderr");
  ASSERT_EQ(run({"response-curve", "--param", "1", "--grid", "-0.1,0,0.1", "--orbits", "4",
                 "--orbit-length", "1000", "--out", path("c.csv")}),
            kExitOk);
  EXPECT_EQ(slurp(path("c.csv")), first);
  EXPECT_EQ(run({"response-curve", "--param", "1", "--grid", "0.1,0"}), kExitConfigError);
}

}  // namespace
}  // namespace spacesplit::cli
