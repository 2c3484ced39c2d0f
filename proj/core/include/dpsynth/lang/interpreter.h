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

#ifndef DPSYNTH_LANG_INTERPRETER_H_
#define DPSYNTH_LANG_INTERPRETER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dpsynth/common/rng.h"
#include "dpsynth/dist/distribution.h"
#include "dpsynth/lang/noise_vector.h"
#include "dpsynth/lang/sketch.h"
#include "dpsynth/lang/value.h"

namespace dpsynth::lang {

// Pre-drawn noise, one sequence per hole. The sequence length is the
// hole's capacity for a single run.
struct NoiseTrace {
  std::vector<std::vector<int64_t>> draws;

  static NoiseTrace Zero(const std::vector<int>& capacities);
  // Holes without a distribution get an empty sequence.
  static NoiseTrace Sample(
      const std::vector<int>& capacities,
      const std::vector<std::optional<dist::NoiseDistribution>>& dists,
      RngStream& rng);
};

// Supplies the next noise value for a hole.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual int64_t Draw(int hole) = 0;
};

// Replays a trace; running past the end of a hole's sequence throws
// RuntimeError(kTraceExhausted).
class TraceSource : public NoiseSource {
 public:
  explicit TraceSource(const NoiseTrace& trace);
  int64_t Draw(int hole) override;
  // Draws taken from \p hole so far.
  int consumed(int hole) const { return positions_[hole]; }

 private:
  const NoiseTrace& trace_;
  std::vector<int> positions_;
};

// Draws fresh values from per-hole distributions.
class SamplingSource : public NoiseSource {
 public:
  SamplingSource(const std::vector<std::optional<dist::NoiseDistribution>>&
                     dists,
                 RngStream& rng)
      : dists_(dists), rng_(rng) {}
  int64_t Draw(int hole) override;

 private:
  const std::vector<std::optional<dist::NoiseDistribution>>& dists_;
  RngStream& rng_;
};

// A sketch with its arguments fixed. Immutable and safe to share between
// threads.
class BoundProgram {
 public:
  // Throws ContractError if the binding does not match the sketch.
  BoundProgram(std::shared_ptr<const MechanismSketch> sketch,
               ArgBinding binding);

  const MechanismSketch& sketch() const { return *sketch_; }
  const std::shared_ptr<const MechanismSketch>& sketch_ptr() const {
    return sketch_;
  }
  const ArgBinding& binding() const { return binding_; }
  int64_t size() const { return size_; }
  int64_t fuel() const { return fuel_; }
  const std::vector<int>& capacities() const { return capacities_; }

  // Runs the body on \p answers. Holes set in \p mask execute as plain
  // assignments and draw nothing. Throws RuntimeError.
  Value Run(const std::vector<int64_t>& answers, NoiseSource& source,
            HoleMask mask = 0) const;

 private:
  std::shared_ptr<const MechanismSketch> sketch_;
  ArgBinding binding_;
  int64_t size_ = 0;
  int64_t fuel_ = 0;
  std::vector<int> capacities_;
  std::vector<Value> initial_;
};

// A completed mechanism: sketch, arguments and concrete noise scales.
class ConcreteMechanism {
 public:
  // Throws ContractError if \p noise does not have one entry per hole.
  ConcreteMechanism(std::shared_ptr<const BoundProgram> program,
                    NoiseVector noise);

  const BoundProgram& program() const { return *program_; }
  const NoiseVector& noise() const { return noise_; }
  const std::vector<std::optional<dist::NoiseDistribution>>& distributions()
      const {
    return dists_;
  }

  // One run with fresh noise from \p rng.
  Value Run(const std::vector<int64_t>& answers, RngStream& rng) const;

 private:
  std::shared_ptr<const BoundProgram> program_;
  NoiseVector noise_;
  std::vector<std::optional<dist::NoiseDistribution>> dists_;
};

}  // namespace dpsynth::lang

#endif  // DPSYNTH_LANG_INTERPRETER_H_
