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

#ifndef DPSYNTH_CLI_COMMANDS_H_
#define DPSYNTH_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "dpsynth/synth/synth.h"

namespace dpsynth::cli {

enum ExitCode { kOk = 0, kFinding = 1, kUsage = 2 };

struct RunConfig {
  synth::SynthConfig synth;
  // Report path; empty means <sketch stem>.report.json.
  std::string out;
  bool paper_scale = false;

  // Raises trials and presamples five-fold when paper_scale is set.
  synth::SynthConfig Effective() const;
};

// Writes the report and a timings sidecar; 0 iff something was verified.
int CmdSynth(const std::string& sketch_path, const RunConfig& config,
             std::ostream& out, std::ostream& err);

// Prints counterexample records; 1 iff some p at epsilon0 is below 0.05.
int CmdTest(const std::string& sketch_path, const std::string& noise,
            double epsilon0, const RunConfig& config, std::ostream& out,
            std::ostream& err);

struct GridSpec {
  int hole_a = 0;  // 0-based
  int hole_b = 1;
  double low = 1.0;
  double high = 12.0;
  double step = 1.0;
  // Scales for the other holes; empty means none of them get noise.
  std::string base;
};

// CSV rows: scale_a, scale_b, objective, log_objective.
int CmdGrid(const std::string& sketch_path, const GridSpec& grid,
            const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line: dpsynth <synth|test|grid> [options].
int Main(int argc, const char* const argv[], std::ostream& out,
         std::ostream& err);

}  // namespace dpsynth::cli

#endif  // DPSYNTH_CLI_COMMANDS_H_
