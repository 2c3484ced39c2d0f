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

#ifndef DPSYNTH_SYNTH_SYNTH_H_
#define DPSYNTH_SYNTH_SYNTH_H_

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/common/error.h"
#include "dpsynth/common/rational.h"
#include "dpsynth/lang/sketch.h"
#include "dpsynth/search/examples.h"
#include "dpsynth/search/optimizer.h"
#include "dpsynth/synth/candidates.h"
#include "dpsynth/synth/grammar.h"

namespace dpsynth::synth {

struct TestPoint {
  Rational epsilon;
  int64_t size = 0;
};

struct SynthConfig {
  uint64_t seed = 1;
  int threads = 0;
  int64_t trials = 20000;
  int64_t presamples = 50000;
  double lambda = 1.0;
  int population = 50;
  int steps_per_hole = 500;
  double zone_low = 0.05;
  double zone_high = 0.9;
  double min_support = 0.01;
  double proposal_scale = 4.0;
  double radius = 3.0;
  double fallback_radius = 6.0;
  double slack = 0.1;
  double reject_p = 0.05;
  int verify_per_hole = 5;
  std::vector<double> scale_grid = {0.5, 1, 2, 3, 4, 6, 8, 12};
  GrammarRanges grammar;
  // Overrides for the synthesis binding, by argument name.
  std::map<std::string, Rational> gamma;
  std::vector<TestPoint> test_points = {
      {Rational(1, 5), 5}, {Rational(1, 5), 10}, {Rational(1, 2), 5},
      {Rational(1, 2), 10}, {Rational(3, 2), 5}, {Rational(3, 2), 10}};

  nlohmann::json ToJson() const;
};

enum class Phase { kInit, kOpti, kEnum, kVerify };
const char* PhaseName(Phase phase);

class PhaseError : public Error {
 public:
  PhaseError(Phase phase, const std::string& message)
      : Error(std::string(PhaseName(phase)) + ": " + message), phase_(phase) {}
  Phase phase() const { return phase_; }

 private:
  Phase phase_;
};

// Size 5, epsilon 1/2, T = 2, N = 1, M = 2; other integers 1; then the
// overrides.
lang::ArgBinding FixParams(const lang::MechanismSketch& sketch,
                           const std::map<std::string, Rational>& overrides);

// The synthesis binding with epsilon and size replaced.
lang::ArgBinding Rebind(const lang::MechanismSketch& sketch,
                        const lang::ArgBinding& gamma, const TestPoint& point);

// Input i of the new length copies input floor(i * old / new).
std::vector<int64_t> Stretch(const std::vector<int64_t>& input, size_t length);

// Stretches each example to \p length, dropping events that no longer fit.
search::ExampleSet StretchExamples(const search::ExampleSet& examples,
                                   size_t length);

struct PhaseTimes {
  double init = 0.0;
  double opti = 0.0;
  double enumerate = 0.0;
  double verify = 0.0;
  double total = 0.0;

  nlohmann::json ToJson() const;
};

struct SynthReport {
  std::string mechanism;
  nlohmann::json config;
  lang::ArgBinding gamma;
  search::ExampleSet examples;
  bool examples_widened = false;
  bool examples_unfiltered = false;
  search::NoiseRegion region;
  double radius_used = 0.0;
  size_t enumerated = 0;
  std::vector<RankedCandidate> ranked;
  std::vector<RankedCandidate> verified;
  std::vector<RankedCandidate> rejected;
  PhaseTimes times;

  // Everything except the timings, so that equal runs give equal bytes.
  nlohmann::json ToJson(const lang::MechanismSketch& sketch) const;
  std::string SummaryTable(const lang::MechanismSketch& sketch) const;
};

SynthReport Synthesize(std::shared_ptr<const lang::MechanismSketch> sketch,
                       const SynthConfig& config);

}  // namespace dpsynth::synth

#endif  // DPSYNTH_SYNTH_SYNTH_H_
