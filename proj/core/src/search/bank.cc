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

#include "dpsynth/search/bank.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpsynth/common/error.h"
#include "dpsynth/common/parallel.h"
#include "dpsynth/common/rng.h"
#include "dpsynth/dist/distribution.h"

namespace dpsynth::search {
namespace {

using lang::HoleMask;
using lang::NoiseVector;
using lang::Value;

double LeadingLog(dist::Family family, double scale) {
  return family == dist::Family::kLaplace
             ? -dist::DiscreteLaplace::LogNormalizer(scale)
             : dist::DiscreteExponential::LogLeadingFactor(scale);
}

struct Slot {
  std::vector<int64_t> answers;
  int stream = 0;
};

}  // namespace

PresampleBank::PresampleBank(std::shared_ptr<const lang::BoundProgram> program,
                             ExampleSet examples, const BankOptions& options)
    : program_(std::move(program)),
      examples_(std::move(examples)),
      options_(options) {
  if (examples_.empty()) throw ContractError("bank needs examples");
  if (options_.presamples <= 0) {
    throw ContractError("presample count must be positive");
  }
  const auto& sketch = program_->sketch();
  const int holes = sketch.num_holes();
  if (options_.proposal_scale <= 0 || options_.mixture_octaves < 0) {
    throw ContractError("bad proposal");
  }
  component_scales_ = options_.component_scales;
  for (double b : component_scales_) {
    if (!(b > 0)) throw ContractError("bad proposal");
  }
  if (component_scales_.empty()) {
    for (int j = -options_.mixture_octaves; j <= options_.mixture_octaves;
         ++j) {
      component_scales_.push_back(std::ldexp(options_.proposal_scale, j));
    }
  }
  masks_ = options_.masks;
  if (masks_.empty()) {
    for (HoleMask m = 0; m < (HoleMask{1} << holes); ++m) masks_.push_back(m);
  }
  std::sort(masks_.begin(), masks_.end());
  masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());

  // Distinct (answers, stream) inputs.
  std::vector<Slot> slots;
  auto slot_of = [&](const std::vector<int64_t>& answers, int stream) {
    for (size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].answers == answers && slots[i].stream == stream) return i;
    }
    slots.push_back({answers, stream});
    return slots.size() - 1;
  };
  sides_.resize(examples_.size());
  for (size_t e = 0; e < examples_.size(); ++e) {
    sides_[e][0].slot = slot_of(examples_[e].d1, 0);
    sides_[e][1].slot = slot_of(examples_[e].d2, options_.shared_traces ? 0 : 1);
  }

  // Traces per stream, drawn once; trace j comes from component j mod C.
  std::vector<std::vector<std::optional<dist::NoiseDistribution>>> proposal(
      component_scales_.size());
  for (size_t k = 0; k < component_scales_.size(); ++k) {
    for (const auto& hole : sketch.holes) {
      proposal[k].emplace_back(
          dist::NoiseDistribution(hole.family, component_scales_[k]));
    }
  }
  const int streams = options_.shared_traces ? 1 : 2;
  const auto m = static_cast<size_t>(options_.presamples);
  std::vector<std::vector<lang::NoiseTrace>> traces(streams);
  for (int s = 0; s < streams; ++s) {
    RngStream root(MixSeed(options_.seed, static_cast<uint64_t>(s)));
    traces[s].resize(m);
    ParallelFor(m, options_.threads, [&](size_t j) {
      RngStream rng = root.Split(j);
      traces[s][j] = lang::NoiseTrace::Sample(
          program_->capacities(), proposal[j % proposal.size()], rng);
    });
  }

  // Runs: one task per (slot, mask).
  cells_.assign(slots.size(), std::vector<Cell>(masks_.size()));
  // Output id of every run, for building event hits afterwards.
  std::vector<std::vector<std::vector<uint32_t>>> run_group(
      slots.size(), std::vector<std::vector<uint32_t>>(masks_.size()));
  std::vector<std::vector<std::vector<Value>>> outputs(
      slots.size(), std::vector<std::vector<Value>>(masks_.size()));
  std::vector<std::vector<std::vector<uint32_t>>> run_output(
      slots.size(), std::vector<std::vector<uint32_t>>(masks_.size()));
  ParallelFor(slots.size() * masks_.size(), options_.threads, [&](size_t t) {
    size_t si = t / masks_.size();
    size_t mi = t % masks_.size();
    HoleMask mask = masks_[mi];
    const Slot& slot = slots[si];
    Cell& cell = cells_[si][mi];
    cell.hole_count = holes;
    std::map<std::vector<int64_t>, uint32_t> group_ids;
    std::map<Value, uint32_t> output_ids;
    auto& groups = run_group[si][mi];
    auto& outs = run_output[si][mi];
    groups.reserve(m);
    outs.reserve(m);
    std::vector<int64_t> key(2 * holes);
    for (size_t j = 0; j < m; ++j) {
      const auto& trace = traces[slot.stream][j];
      lang::TraceSource source(trace);
      Value out = program_->Run(slot.answers, source, mask);
      for (int h = 0; h < holes; ++h) {
        int k = source.consumed(h);
        int64_t s = 0;
        for (int i = 0; i < k; ++i) s += std::llabs(trace.draws[h][i]);
        key[2 * h] = k;
        key[2 * h + 1] = s;
      }
      auto [git, gnew] =
          group_ids.try_emplace(key, static_cast<uint32_t>(group_ids.size()));
      if (gnew) {
        cell.stats.insert(cell.stats.end(), key.begin(), key.end());
        cell.group_totals.push_back(0);
        cell.log_proposal.push_back(LogProposal(key));
      }
      ++cell.group_totals[git->second];
      groups.push_back(git->second);
      auto [oit, onew] = output_ids.try_emplace(
          std::move(out), static_cast<uint32_t>(output_ids.size()));
      if (onew) outputs[si][mi].push_back(oit->first);
      outs.push_back(oit->second);
    }
  });

  // Event hits per example side and mask.
  for (size_t e = 0; e < examples_.size(); ++e) {
    for (int side = 0; side < 2; ++side) {
      Side& sd = sides_[e][side];
      for (size_t mi = 0; mi < masks_.size(); ++mi) {
        const auto& outs = outputs[sd.slot][mi];
        std::vector<char> member(outs.size());
        for (size_t o = 0; o < outs.size(); ++o) {
          member[o] = examples_[e].event.Contains(outs[o]) ? 1 : 0;
        }
        std::map<uint32_t, int64_t> counts;
        const auto& groups = run_group[sd.slot][mi];
        const auto& ids = run_output[sd.slot][mi];
        for (size_t j = 0; j < m; ++j) {
          if (member[ids[j]]) ++counts[groups[j]];
        }
        sd.hits[masks_[mi]].assign(counts.begin(), counts.end());
      }
    }
  }
}

bool PresampleBank::HasMask(HoleMask mask) const {
  return std::binary_search(masks_.begin(), masks_.end(), mask);
}

const PresampleBank::Cell& PresampleBank::CellFor(size_t slot,
                                                  HoleMask mask) const {
  auto it = std::lower_bound(masks_.begin(), masks_.end(), mask);
  if (it == masks_.end() || *it != mask) {
    throw ContractError("bank was not prepared for this no-noise pattern");
  }
  return cells_[slot][static_cast<size_t>(it - masks_.begin())];
}

double PresampleBank::LogProposal(const std::vector<int64_t>& key) const {
  const auto& holes = program_->sketch().holes;
  const double log_share = -std::log(static_cast<double>(component_scales_.size()));
  std::vector<double> terms;
  for (double b : component_scales_) {
    double v = log_share;
    for (size_t h = 0; h < holes.size(); ++h) {
      if (key[2 * h] == 0) continue;
      v += static_cast<double>(key[2 * h]) * LeadingLog(holes[h].family, b) -
           static_cast<double>(key[2 * h + 1]) / b;
    }
    terms.push_back(v);
  }
  double top = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

std::vector<double> PresampleBank::LogWeights(const Cell& cell,
                                              const NoiseVector& c) const {
  const auto& holes = program_->sketch().holes;
  std::vector<double> lead(holes.size(), 0.0), slope(holes.size(), 0.0);
  std::vector<int> active;
  for (size_t h = 0; h < holes.size(); ++h) {
    if (!c[h]) continue;
    active.push_back(static_cast<int>(h));
    lead[h] = LeadingLog(holes[h].family, *c[h]);
    slope[h] = 1.0 / *c[h];
  }
  size_t groups = cell.group_totals.size();
  std::vector<double> lw(groups, 0.0);
  const int width = 2 * cell.hole_count;
  double top = -std::numeric_limits<double>::infinity();
  for (size_t g = 0; g < groups; ++g) {
    const int64_t* st = &cell.stats[g * width];
    double v = 0.0;
    for (int h : active) {
      v += static_cast<double>(st[2 * h]) * lead[h] -
           static_cast<double>(st[2 * h + 1]) * slope[h];
    }
    v -= cell.log_proposal[g];
    lw[g] = v;
    top = std::max(top, v);
  }
  for (double& v : lw) v = std::exp(v - top);
  return lw;
}

double PresampleBank::Ratio(
    const Cell& cell, const std::vector<double>& weights,
    const std::vector<std::pair<uint32_t, int64_t>>& hits) const {
  double den = 0.0;
  for (size_t g = 0; g < weights.size(); ++g) {
    den += weights[g] * static_cast<double>(cell.group_totals[g]);
  }
  double num = 0.0;
  for (const auto& [g, count] : hits) {
    num += weights[g] * static_cast<double>(count);
  }
  double floor = 1.0 / (10.0 * static_cast<double>(options_.presamples));
  double p = den > 0.0 ? num / den : 0.0;
  return std::clamp(p, floor, 1.0 - floor);
}

double PresampleBank::EstimateEventProb(size_t example, int side,
                                        const NoiseVector& candidate) const {
  if (candidate.size() != program_->sketch().holes.size()) {
    throw ContractError("candidate length differs from the hole count");
  }
  if (side != 0 && side != 1) throw ContractError("side must be 0 or 1");
  const Side& sd = sides_.at(example)[side];
  HoleMask mask = candidate.Mask();
  const Cell& cell = CellFor(sd.slot, mask);
  return Ratio(cell, LogWeights(cell, candidate), sd.hits.at(mask));
}

std::vector<double> PresampleBank::ExampleLosses(
    const NoiseVector& candidate) const {
  if (candidate.size() != program_->sketch().holes.size()) {
    throw ContractError("candidate length differs from the hole count");
  }
  HoleMask mask = candidate.Mask();
  std::vector<std::vector<double>> weights(cells_.size());
  auto prob = [&](const Side& sd) {
    const Cell& cell = CellFor(sd.slot, mask);
    auto& w = weights[sd.slot];
    if (w.empty()) w = LogWeights(cell, candidate);
    return Ratio(cell, w, sd.hits.at(mask));
  };
  std::vector<double> losses;
  losses.reserve(examples_.size());
  for (const auto& pair : sides_) {
    double p1 = prob(pair[0]);
    double p2 = prob(pair[1]);
    if (std::max(p1, p2) < options_.min_support) {
      losses.push_back(1.0);
    } else {
      losses.push_back(std::max(p1 / p2, p2 / p1));
    }
  }
  return losses;
}

double PresampleBank::MaxLoss(const NoiseVector& candidate) const {
  auto losses = ExampleLosses(candidate);
  return *std::max_element(losses.begin(), losses.end());
}

double Objective(const PresampleBank& bank, const NoiseVector& candidate,
                 double epsilon, double lambda) {
  return std::abs(bank.MaxLoss(candidate) - std::exp(epsilon)) +
         lambda * candidate.L0();
}

double LogObjective(const PresampleBank& bank, const NoiseVector& candidate,
                    double epsilon, double lambda) {
  return std::abs(std::log(bank.MaxLoss(candidate)) - epsilon) +
         lambda * candidate.L0();
}

}  // namespace dpsynth::search
