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

#ifndef DPSYNTH_COMMON_RNG_H_
#define DPSYNTH_COMMON_RNG_H_

#include <cstdint>
#include <limits>
#include <random>

namespace dpsynth {

// Mixes a stream index into a seed (SplitMix64 finalizer). Used to derive
// independent, reproducible streams from a single user seed.
uint64_t MixSeed(uint64_t seed, uint64_t stream);

// A seeded random stream. Satisfies UniformRandomBitGenerator so it can feed
// the <random> distributions directly. Streams are split by index rather than
// by advancing state, so the values a consumer sees do not depend on how
// work was scheduled across threads.
class RngStream {
 public:
  using result_type = uint64_t;

  explicit RngStream(uint64_t seed) : seed_(seed), engine_(MixSeed(seed, 0)) {}

  // Child stream number `index`; independent of this stream's position.
  RngStream Split(uint64_t index) const {
    return RngStream(MixSeed(seed_, index + 1));
  }

  uint64_t seed() const { return seed_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double UniformOpen() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound).
  uint64_t Below(uint64_t bound) {
    return std::uniform_int_distribution<uint64_t>(0, bound - 1)(engine_);
  }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dpsynth

#endif  // DPSYNTH_COMMON_RNG_H_
