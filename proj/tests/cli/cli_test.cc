// Copyright 2026 The dpsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpsynth/cli/commands.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"
#include "support/corpus.h"

namespace dpsynth::cli {
namespace {

namespace fs = std::filesystem;

RunConfig Quick() {
  RunConfig c;
  c.synth.seed = 3;
  c.synth.trials = 20000;
  return c;
}

std::string Slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string TempPath(const std::string& name) {
  return (fs::temp_directory_path() / ("dpsynth_cli_" + name)).string();
}

TEST(CliTest, TestCommandAcceptsTextbookNoisyMax) {
  std::ostringstream out, err;
  int code = CmdTest(testing::CorpusPath("noisymax1"), "4", 0.5, Quick(), out,
                     err);
  EXPECT_EQ(code, kOk) << err.str();
  EXPECT_FALSE(out.str().empty());
}

TEST(CliTest, TestCommandFlagsSmallEpsilon) {
  std::ostringstream out, err;
  int code = CmdTest(testing::CorpusPath("noisymax1"), "4", 0.2, Quick(), out,
                     err);
  EXPECT_EQ(code, kFinding);
  bool low = false;
  std::istringstream lines(out.str());
  for (std::string line; std::getline(lines, line);) {
    auto j = nlohmann::json::parse(line);
    for (const char* key : {"d1", "d2", "event", "p", "test_epsilon", "rho1",
                            "rho2", "trials", "seed"}) {
      EXPECT_TRUE(j.contains(key));
    }
    low = low || j["p"].get<double>() < 0.05;
  }
  EXPECT_TRUE(low);
}

TEST(CliTest, TestCommandFlagsNoiselessSum) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdTest(testing::CorpusPath("sum"), "bot", 0.5, Quick(), out, err),
            kFinding);
}

TEST(CliTest, TestCommandRejectsArityMismatch) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdTest(testing::CorpusPath("sum"), "1,2", 0.5, Quick(), out, err),
            kUsage);
  EXPECT_NE(err.str().find("error"), std::string::npos);
}

TEST(CliTest, GridSingleCell) {
  RunConfig c = Quick();
  c.synth.trials = 2000;
  c.synth.presamples = 2000;
  c.synth.scale_grid = {2, 4};
  GridSpec g;
  g.low = g.high = 4.0;
  std::ostringstream out, err;
  ASSERT_EQ(CmdGrid(testing::CorpusPath("abovet1"), g, c, out, err), kOk)
      << err.str();
  std::istringstream lines(out.str());
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "scale1,scale2,objective,log_objective");
  EXPECT_EQ(row.rfind("4,4,", 0), 0u);
  EXPECT_FALSE(std::getline(lines, extra));
}

TEST(CliTest, GridRejectsBadHole) {
  GridSpec g;
  g.hole_b = 4;
  std::ostringstream out, err;
  EXPECT_EQ(CmdGrid(testing::CorpusPath("abovet2"), g, Quick(), out, err),
            kUsage);
}

TEST(CliTest, SynthMissingFileWritesNothing) {
  RunConfig c = Quick();
  c.out = TempPath("missing.json");
  fs::remove(c.out);
  std::ostringstream out, err;
  EXPECT_NE(CmdSynth("/nonexistent/sketch.dpm", c, out, err), kOk);
  EXPECT_FALSE(fs::exists(c.out));
}

TEST(CliTest, SynthIsDeterministic) {
  RunConfig c;
  c.synth.seed = 7;
  c.synth.trials = 2000;
  c.synth.presamples = 4000;
  c.synth.population = 8;
  c.synth.steps_per_hole = 10;
  c.synth.scale_grid = {2, 4};
  c.synth.test_points = {{Rational(1, 2), 5}};
  std::ostringstream out, err;
  c.out = TempPath("a.json");
  CmdSynth(testing::CorpusPath("sum"), c, out, err);
  c.out = TempPath("b.json");
  CmdSynth(testing::CorpusPath("sum"), c, out, err);
  std::string a = Slurp(TempPath("a.json"));
  EXPECT_FALSE(a.empty()) << err.str();
  EXPECT_EQ(a, Slurp(TempPath("b.json")));
  EXPECT_TRUE(fs::exists(TempPath("a.json") + ".timings.json"));
}

TEST(CliTest, ArgumentParsing) {
  std::ostringstream out, err;
  const char* none[] = {"dpsynth"};
  EXPECT_EQ(Main(1, none, out, err), kUsage);
  const char* bad[] = {"dpsynth", "frobnicate"};
  EXPECT_EQ(Main(2, bad, out, err), kUsage);
  const char* help[] = {"dpsynth", "synth", "--help"};
  EXPECT_EQ(Main(3, help, out, err), kOk);
  EXPECT_NE(out.str().find("--presamples"), std::string::npos);
  const char* neg[] = {"dpsynth", "synth", "x.dpm", "--trials", "0"};
  EXPECT_EQ(Main(5, neg, out, err), kUsage);
  const char* no_noise[] = {"dpsynth", "test", "x.dpm"};
  EXPECT_EQ(Main(3, no_noise, out, err), kUsage);
}

TEST(CliTest, PaperScaleMultipliesBudgets) {
  RunConfig c;
  c.paper_scale = true;
  auto e = c.Effective();
  EXPECT_EQ(e.trials, 100000);
  EXPECT_EQ(e.presamples, 250000);
}

}  // namespace
}  // namespace dpsynth::cli
