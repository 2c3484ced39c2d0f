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

#include <filesystem>
#include <map>

#include "dpsynth/lang/parser.h"
#include "gtest/gtest.h"
#include "support/corpus.h"

namespace dpsynth {
namespace {

TEST(CorpusTest, NineSketchesWithExpectedHoles) {
  std::map<std::string, int> expected = {
      {"Sum", 1},      {"Histogram", 1}, {"NoisyMax1", 1},
      {"NoisyMax2", 2}, {"ExpNoisyMax", 2}, {"AboveT1", 2},
      {"AboveT2", 3},  {"SVT", 2},       {"SmartSum", 2}};
  std::map<std::string, int> found;
  for (const auto& entry :
       std::filesystem::directory_iterator(DPSYNTH_CORPUS_DIR)) {
    if (entry.path().extension() != ".dpm") continue;
    auto sketch = lang::LoadSketch(entry.path().string());
    found[sketch.name] = sketch.num_holes();
  }
  EXPECT_EQ(found, expected);
}

}  // namespace
}  // namespace dpsynth
