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

#ifndef DPSYNTH_LANG_NOISE_VECTOR_H_
#define DPSYNTH_LANG_NOISE_VECTOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dpsynth::lang {

// Bit h set means hole h carries no noise.
using HoleMask = uint32_t;

// Raw search coordinates below this value mean "no noise".
inline constexpr double kSnapThreshold = 0.25;

// A concrete scale per hole, or nullopt for no noise.
class NoiseVector {
 public:
  NoiseVector() = default;
  // Throws ContractError on a non-positive scale.
  explicit NoiseVector(std::vector<std::optional<double>> scales);

  // Maps search coordinates to scales; values below \p snap become empty.
  static NoiseVector FromRaw(std::span<const double> raw,
                             double snap = kSnapThreshold);
  // "4,bot,2.5". Throws ContractError.
  static NoiseVector Parse(std::string_view text);

  size_t size() const { return scales_.size(); }
  const std::optional<double>& operator[](size_t i) const {
    return scales_[i];
  }
  const std::vector<std::optional<double>>& scales() const { return scales_; }

  // Number of holes that carry noise.
  int L0() const;
  HoleMask Mask() const;
  // Missing scales become 0.
  std::vector<double> AsPoint() const;
  std::string ToString() const;

  friend bool operator==(const NoiseVector&, const NoiseVector&) = default;

 private:
  std::vector<std::optional<double>> scales_;
};

}  // namespace dpsynth::lang

#endif  // DPSYNTH_LANG_NOISE_VECTOR_H_
