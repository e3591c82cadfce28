#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "rwrs/cli.hpp"
#include "rwrs/error.hpp"

namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "rwrs-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  testing::internal::CaptureStdout();
  testing::internal::CaptureStderr();
  const int code = rwrs::run(static_cast<int>(argv.size()), argv.data());
  testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("rwrs_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Cli, SimulateIsByteDeterministic) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const std::vector<std::string> base{"simulate-rwrs", "--model", "iid", "--n", "1024", "--replicates", "10",
                                      "--seed", "7"};
  auto with_out = [&](const fs::path& dir, std::string threads) {
    auto v = base;
    v.insert(v.end(), {"--out", dir.string(), "--threads", threads});
    return v;
  };
  ASSERT_EQ(run(with_out(a, "1")), 0);
  ASSERT_EQ(run(with_out(b, "3")), 0);
  EXPECT_EQ(slurp(a / "rwrs_batch.csv"), slurp(b / "rwrs_batch.csv"));
  EXPECT_EQ(slurp(a / "rwrs_batch.csv").rfind("# rwrs-lab csv v1 kind=batch seed=7", 0), 0u);
}

TEST(Cli, ConfigRoundTripAndOverride) {
  const auto a = scratch("cfg_a");
  const auto b = scratch("cfg_b");
  const auto c = scratch("cfg_c");
  ASSERT_EQ(run({"simulate-rwrs", "--model", "ar1", "--n", "256", "--replicates", "5", "--seed", "3", "--times",
                 "0.5,1", "--out", a.string()}),
            0);
  ASSERT_EQ(run({"simulate-rwrs", "--config", (a / "config.json").string(), "--out", b.string()}), 0);
  EXPECT_EQ(slurp(a / "rwrs_batch.csv"), slurp(b / "rwrs_batch.csv"));

  ASSERT_EQ(run({"--config", (a / "config.json").string(), "--seed", "4", "--out", c.string()}), 0);
  const auto echoed = nlohmann::json::parse(slurp(c / "config.json"));
  EXPECT_EQ(echoed["command"], "simulate-rwrs");
  EXPECT_EQ(echoed["options"]["seed"], "4");
  EXPECT_EQ(echoed["options"]["model"], "ar1");
  EXPECT_NE(slurp(a / "rwrs_batch.csv"), slurp(c / "rwrs_batch.csv"));
}

TEST(Cli, ExpandConfigPlacesFlagsFirst) {
  const auto dir = scratch("expand");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "c.json");
    f << R"({"command": "simulate-limit", "options": {"replicates": 10, "times": [0.5, 1], "field": true}})";
  }
  const auto out = rwrs::expand_config({"rwrs-lab", "--config", (dir / "c.json").string(), "--replicates", "3"});
  const std::vector<std::string> expected{"rwrs-lab",           "simulate-limit", "--field=true", "--replicates=10",
                                          "--times=0.5,1",      "--config",       (dir / "c.json").string(),
                                          "--replicates",       "3"};
  EXPECT_EQ(out, expected);
  EXPECT_THROW(rwrs::expand_config({"rwrs-lab", "verify", "--config", (dir / "c.json").string()}),
               rwrs::ConfigError);
  EXPECT_THROW(rwrs::expand_config({"rwrs-lab", "--config", (dir / "missing.json").string()}), rwrs::ConfigError);
}

TEST(Cli, ExitCodes) {
  const auto d = scratch("codes");
  EXPECT_EQ(run({"simulate-rwrs", "--n", "-3", "--out", d.string()}), rwrs::kExitConfigError);
  EXPECT_EQ(run({"simulate-rwrs", "--model", "banana", "--out", d.string()}), rwrs::kExitConfigError);
  EXPECT_EQ(run({"simulate-rwrs", "--times", "0.5,0.2", "--out", d.string()}), rwrs::kExitConfigError);
  EXPECT_EQ(run({"simulate-rwrs", "--law", "1:0.7,-1:0.3", "--out", d.string()}), rwrs::kExitConfigError);
  EXPECT_EQ(run({"frobnicate"}), rwrs::kExitConfigError);
  EXPECT_EQ(run({}), rwrs::kExitConfigError);
  EXPECT_EQ(run({"verify", "--help"}), rwrs::kExitOk);
}

TEST(Cli, DependencePolynomialVerdict) {
  const auto d = scratch("dep");
  ASSERT_EQ(run({"dependence", "--family", "polynomial", "--a", "1.0", "--out", d.string()}), 0);
  const auto doc = nlohmann::json::parse(slurp(d / "dependence.json"));
  EXPECT_EQ(doc["verdict"], false);
  EXPECT_EQ(doc["a2"]["verdict"], false);
  ASSERT_EQ(run({"dependence", "--family", "polynomial", "--a", "2.0", "--out", d.string()}), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(d / "dependence.json"))["verdict"], true);
  ASSERT_EQ(run({"dependence", "--model", "ar1", "--rho", "0.5", "--out", d.string()}), 0);
  const auto ar = nlohmann::json::parse(slurp(d / "dependence.json"));
  EXPECT_EQ(ar["verdict"], true);
  EXPECT_NEAR(ar["sigma_inf_sq"].get<double>(), 4.0, 1e-12);
}

TEST(Cli, OtherSubcommandsWriteFiles) {
  const auto d = scratch("other");
  ASSERT_EQ(run({"simulate-limit", "--replicates", "20", "--times", "0.5,1", "--field", "--out", d.string()}), 0);
  EXPECT_TRUE(fs::exists(d / "delta_batch.csv"));
  EXPECT_TRUE(fs::exists(d / "local_time_field.csv"));
  ASSERT_EQ(run({"local-time", "--n", "500", "--out", d.string()}), 0);
  EXPECT_TRUE(fs::exists(d / "profile.csv"));
  EXPECT_TRUE(fs::exists(d / "alpha.csv"));
  ASSERT_EQ(run({"export", "--model", "doubling", "--left", "-10", "--right", "10", "--out", d.string()}), 0);
  EXPECT_TRUE(fs::exists(d / "scenery.csv"));
  EXPECT_TRUE(fs::exists(d / "covariance.csv"));
  EXPECT_TRUE(fs::exists(d / "model.json"));
  ASSERT_EQ(run({"export", "--model", "ifs-tanh", "--format", "json", "--out", d.string()}), 0);
  EXPECT_TRUE(fs::exists(d / "scenery.json"));
}
