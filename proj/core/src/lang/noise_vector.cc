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

#include "dpsynth/lang/noise_vector.h"

#include <cmath>
#include <sstream>

#include "dpsynth/common/error.h"

namespace dpsynth::lang {

NoiseVector::NoiseVector(std::vector<std::optional<double>> scales)
    : scales_(std::move(scales)) {
  for (const auto& s : scales_) {
    if (s && (!(*s > 0.0) || !std::isfinite(*s))) {
      throw ContractError("noise scales must be positive");
    }
  }
}

NoiseVector NoiseVector::FromRaw(std::span<const double> raw, double snap) {
  std::vector<std::optional<double>> scales;
  scales.reserve(raw.size());
  for (double x : raw) {
    if (x < snap) {
      scales.emplace_back(std::nullopt);
    } else {
      scales.emplace_back(x);
    }
  }
  return NoiseVector(std::move(scales));
}

NoiseVector NoiseVector::Parse(std::string_view text) {
  std::vector<std::optional<double>> scales;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(start, comma - start));
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (item == "bot" || item == "_") {
      scales.emplace_back(std::nullopt);
    } else {
      size_t used = 0;
      double value = 0;
      try {
        value = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (item.empty() || used != item.size()) {
        throw ContractError("bad noise scale '" + item + "'");
      }
      scales.emplace_back(value);
    }
    start = comma + 1;
  }
  return NoiseVector(std::move(scales));
}

int NoiseVector::L0() const {
  int count = 0;
  for (const auto& s : scales_) count += s.has_value() ? 1 : 0;
  return count;
}

HoleMask NoiseVector::Mask() const {
  HoleMask mask = 0;
  for (size_t i = 0; i < scales_.size(); ++i) {
    if (!scales_[i]) mask |= HoleMask{1} << i;
  }
  return mask;
}

std::vector<double> NoiseVector::AsPoint() const {
  std::vector<double> point;
  point.reserve(scales_.size());
  for (const auto& s : scales_) point.push_back(s.value_or(0.0));
  return point;
}

std::string NoiseVector::ToString() const {
  std::ostringstream out;
  for (size_t i = 0; i < scales_.size(); ++i) {
    if (i > 0) out << ",";
    if (scales_[i]) {
      out << *scales_[i];
    } else {
      out << "bot";
    }
  }
  return out.str();
}

}  // namespace dpsynth::lang
