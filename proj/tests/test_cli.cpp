// Copyright 2026 The pdistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "pdistill/io.hpp"
#include "test_support.hpp"

using namespace pdistill;
using namespace pdistill::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pdistill");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pdistill_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_spec(const std::string& name, const PrivateStateSpec& spec) {
    const auto path = (dir_ / name).string();
    io::write_text_file(path, io::dump(io::spec_to_json(spec)));
    return path;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, BoundOnSwapShield) {
  const auto spec = write_spec("swap_pbit.json", swap_spec());
  const auto r = invoke({"bound", "--spec", spec, "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["bound"]["best_verified_rate"].get<double>(), 0.25, 1e-6);
  EXPECT_EQ(j["config"]["command"], "bound");
  EXPECT_EQ(j["config"]["seed"], 1);
  EXPECT_EQ(j["key_rate"], 1.0);
}

TEST_F(CliTest, CertifyTrivialShield) {
  const auto spec = write_spec("trivial.json", trivial_spec());
  const auto r = invoke({"certify", "--spec", spec, "--samples", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["certificate"]["passed"].get<bool>());
  EXPECT_NEAR(j["certificate"]["margin"].get<double>(), 0.0, 1e-12);
}

TEST_F(CliTest, CorruptedSpecExitsOneNamingTheInvariant) {
  auto doc = io::spec_to_json(swap_spec());
  doc["shield"]["data"][0] = nlohmann::json::array({0.5, 0.0});
  const auto path = (dir_ / "corrupted.json").string();
  io::write_text_file(path, io::dump(doc));
  const auto r = invoke({"bound", "--spec", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("trace"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("/shield"), std::string::npos) << r.err;
}

TEST_F(CliTest, MalformedJsonReportsLocation) {
  const auto path = (dir_ / "broken.json").string();
  io::write_text_file(path, "{\"d\": 2, \"parties\": ");
  const auto r = invoke({"eta", "--spec", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("byte"), std::string::npos) << r.err;
}

TEST_F(CliTest, ParseErrorsAndHelp) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"eta"}).code, 1);  // --spec is required
  EXPECT_EQ(invoke({"gen", "--kind", "tensor"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, IdenticalConfigGivesIdenticalBytes) {
  const auto spec = write_spec("s.json", corpus_spec(1));
  const std::vector<std::vector<std::string>> runs{{"eta", "--samples", "5"},
                                                   {"distill", "--all-pairs"},
                                                   {"bound"},
                                                   {"certify", "--samples", "5"},
                                                   {"sweep", "--values", "0,0.3"}};
  for (auto args : runs) {
    args.insert(args.end(), {"--spec", spec, "--seed", "5"});
    const auto a = invoke(args);
    const auto b = invoke(args);
    ASSERT_EQ(a.code, 0) << args[0] << ": " << a.err;
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

TEST_F(CliTest, OutDirectoryAndPipeline) {
  const auto out = (dir_ / "reports").string();
  ASSERT_EQ(invoke({"build", "--d", "3", "--shield-dims", "2,3", "--seed", "11", "--out", out}).code, 0);
  ASSERT_TRUE(fs::exists(fs::path(out) / "spec.json"));
  const auto spec = io::spec_from_json(io::read_json_file(fs::path(out) / "spec.json"));
  EXPECT_EQ(spec.d, 3u);
  EXPECT_EQ(spec.shield_dims, (Dims{2, 3}));

  const auto r = invoke({"distill", "--spec", (fs::path(out) / "spec.json").string(), "--all-pairs", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto j = io::read_json_file(fs::path(out) / "distill.json");
  EXPECT_EQ(j["pairs"].size(), 3u);
  EXPECT_TRUE(j["residual_ok"].get<bool>());
}

TEST_F(CliTest, BuildFromExplicitFiles) {
  const auto shield = (dir_ / "shield.json").string();
  const auto u0 = (dir_ / "u0.json").string();
  const auto u1 = (dir_ / "u1.json").string();
  io::write_text_file(shield, io::dump(io::matrix_to_json(identity(4) / 4.0)));
  io::write_text_file(u0, io::dump(io::matrix_to_json(identity(4))));
  io::write_text_file(u1, io::dump(io::matrix_to_json(swap_gate())));
  const auto r = invoke({"build", "--shield-file", shield, "--unitary-files", u0 + "," + u1});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto spec = io::spec_from_json(nlohmann::json::parse(r.out));
  EXPECT_EQ(spec.unitaries[1].matrix(), swap_gate());
}

TEST_F(CliTest, EnvironmentOverridesDefaultsButNotFlags) {
  ::setenv("PDISTILL_SEED", "77", 1);
  ::setenv("PDISTILL_RESTARTS", "3", 1);
  auto j = nlohmann::json::parse(invoke({"gen", "--dim", "3"}).out);
  EXPECT_EQ(j["config"]["seed"], 77);
  EXPECT_EQ(j["config"]["optimizer"]["restarts"], 3);
  j = nlohmann::json::parse(invoke({"gen", "--dim", "3", "--seed", "8"}).out);
  EXPECT_EQ(j["config"]["seed"], 8);
  ::unsetenv("PDISTILL_SEED");
  ::unsetenv("PDISTILL_RESTARTS");
}

TEST_F(CliTest, GenOutputsValidMatrices) {
  auto r = invoke({"gen", "--kind", "density", "--dim", "4", "--rank", "2", "--seed", "3"});
  ASSERT_EQ(r.code, 0);
  const auto rho = io::matrix_from_json(nlohmann::json::parse(r.out)).matrix;
  EXPECT_TRUE(check_state(rho, {}).empty());
  r = invoke({"gen", "--kind", "unitary", "--dim", "3"});
  const auto u = io::matrix_from_json(nlohmann::json::parse(r.out)).matrix;
  EXPECT_NO_THROW(UnitaryOp{u});
}

TEST_F(CliTest, SweepCsv) {
  const auto r = invoke({"sweep", "--knob", "mix", "--values", "0,0.5,1", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "knob,eta,p,paper_rate,verified_rate");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 3);
  // the fully mixed shield end of the sweep is the SWAP-free white-noise p-bit
  EXPECT_NE(r.out.find("\n1,"), std::string::npos);

  const auto out = (dir_ / "sweep").string();
  ASSERT_EQ(invoke({"sweep", "--knob", "rank", "--seed", "2", "--out", out}).code, 0);
  EXPECT_EQ(io::read_json_file(fs::path(out) / "sweep.json")["rows"].size(), 4u);
  EXPECT_TRUE(fs::exists(fs::path(out) / "sweep.csv"));
  EXPECT_EQ(invoke({"sweep", "--knob", "mix", "--values", "1.5"}).code, 1);
}
