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

#ifndef DPSYNTH_SEARCH_BANK_H_
#define DPSYNTH_SEARCH_BANK_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "dpsynth/lang/interpreter.h"
#include "dpsynth/lang/noise_vector.h"
#include "dpsynth/search/examples.h"

namespace dpsynth::search {

struct BankOptions {
  int64_t presamples = 50000;
  double proposal_scale = 4.0;
  // Traces cycle through proposal_scale * 2^j for |j| <= mixture_octaves
  // and are weighted against the mixture; 0 means the single proposal.
  int mixture_octaves = 2;
  // Explicit mixture components; overrides the two fields above.
  std::vector<double> component_scales;
  uint64_t seed = 0;
  int threads = 0;
  // false gives each side of a pair its own traces (for comparison only).
  bool shared_traces = true;
  // Pairs where both event estimates fall below this count as loss 1.
  double min_support = 0.0;
  // Hole masks to prepare; empty means all of them.
  std::vector<lang::HoleMask> masks;
};

// Noise traces drawn once from the proposal, run on every example input and
// reweighted per candidate.
class PresampleBank {
 public:
  PresampleBank(std::shared_ptr<const lang::BoundProgram> program,
                ExampleSet examples, const BankOptions& options);

  const lang::BoundProgram& program() const { return *program_; }
  const ExampleSet& examples() const { return examples_; }
  int64_t presamples() const { return options_.presamples; }
  double proposal_scale() const { return options_.proposal_scale; }
  bool HasMask(lang::HoleMask mask) const;

  // Self-normalized estimate of P[out in E] on side 0 (d1) or 1 (d2),
  // clamped to [1/(10m), 1 - 1/(10m)].
  double EstimateEventProb(size_t example, int side,
                           const lang::NoiseVector& candidate) const;
  // max(p1/p2, p2/p1) per example.
  std::vector<double> ExampleLosses(const lang::NoiseVector& candidate) const;
  double MaxLoss(const lang::NoiseVector& candidate) const;

 private:
  struct Cell {
    int hole_count = 0;
    // Per group: consumed draws then summed magnitudes, per hole.
    std::vector<int64_t> stats;
    std::vector<int64_t> group_totals;
    // Per group: log proposal mass of the consumed draws.
    std::vector<double> log_proposal;
  };
  struct Side {
    size_t slot = 0;
    // (group, count of runs landing in the event)
    std::map<lang::HoleMask, std::vector<std::pair<uint32_t, int64_t>>> hits;
  };

  double LogProposal(const std::vector<int64_t>& key) const;
  std::vector<double> LogWeights(const Cell& cell,
                                 const lang::NoiseVector& c) const;
  double Ratio(const Cell& cell, const std::vector<double>& weights,
               const std::vector<std::pair<uint32_t, int64_t>>& hits) const;
  const Cell& CellFor(size_t slot, lang::HoleMask mask) const;

  std::shared_ptr<const lang::BoundProgram> program_;
  ExampleSet examples_;
  BankOptions options_;
  std::vector<double> component_scales_;
  std::vector<lang::HoleMask> masks_;
  // cells_[slot][mask index]
  std::vector<std::vector<Cell>> cells_;
  std::vector<std::array<Side, 2>> sides_;
};

// |max loss - e^eps| + lambda * L0.
double Objective(const PresampleBank& bank, const lang::NoiseVector& candidate,
                 double epsilon, double lambda);
// |log max loss - eps| + lambda * L0, for plots.
double LogObjective(const PresampleBank& bank,
                    const lang::NoiseVector& candidate, double epsilon,
                    double lambda);

}  // namespace dpsynth::search

#endif  // DPSYNTH_SEARCH_BANK_H_
