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

#include "dpsynth/tester/event.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "dpsynth/common/error.h"

namespace dpsynth::tester {

using lang::Type;
using lang::Value;

Event Event::Singleton(Value value) {
  Event e;
  e.kind_ = EventKind::kSingleton;
  e.values_.push_back(std::move(value));
  return e;
}

Event Event::ValueSet(std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Event e;
  e.kind_ = EventKind::kValueSet;
  e.values_ = std::move(values);
  return e;
}

Event Event::AtLeast(int64_t threshold) {
  Event e;
  e.kind_ = EventKind::kAtLeast;
  e.threshold_ = threshold;
  return e;
}

Event Event::Pattern(std::vector<PatternTerm> terms) {
  Event e;
  e.kind_ = EventKind::kPattern;
  e.terms_ = std::move(terms);
  return e;
}

bool Event::Contains(const Value& out) const {
  switch (kind_) {
    case EventKind::kSingleton:
      return out == values_.front();
    case EventKind::kValueSet:
      return std::binary_search(values_.begin(), values_.end(), out);
    case EventKind::kAtLeast:
      return out.type() == Type::kInt && out.AsInt() >= threshold_;
    case EventKind::kPattern: {
      if (out.type() != Type::kList) return false;
      const auto& list = out.AsList();
      for (const auto& t : terms_) {
        if (t.index < 0 || t.index >= static_cast<int>(list.size())) {
          return false;
        }
        int64_t x = list[t.index];
        bool ok = t.op == TermOp::kGe   ? x >= t.value
                  : t.op == TermOp::kLt ? x < t.value
                                        : x == t.value;
        if (!ok) return false;
      }
      return true;
    }
  }
  return false;
}

int Event::MaxIndex() const {
  int max_index = -1;
  for (const auto& t : terms_) max_index = std::max(max_index, t.index);
  return max_index;
}

int Event::ListLength() const {
  int length = -1;
  for (const auto& v : values_) {
    if (v.type() == Type::kList) {
      length = std::max(length, static_cast<int>(v.AsList().size()));
    }
  }
  return length;
}

namespace {

const char* OpText(TermOp op) {
  return op == TermOp::kGe ? ">=" : op == TermOp::kLt ? "<" : "==";
}

}  // namespace

std::string Event::ToString() const {
  switch (kind_) {
    case EventKind::kSingleton:
      return "{" + values_.front().ToString() + "}";
    case EventKind::kValueSet: {
      std::string out = "{";
      for (size_t i = 0; i < values_.size(); ++i) {
        if (i > 0) out += ",";
        out += values_[i].ToString();
      }
      return out + "}";
    }
    case EventKind::kAtLeast:
      return "{>=" + std::to_string(threshold_) + "}";
    case EventKind::kPattern: {
      std::string out;
      for (size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) out += " & ";
        out += "[" + std::to_string(terms_[i].index) + "]" +
               OpText(terms_[i].op) + std::to_string(terms_[i].value);
      }
      return out;
    }
  }
  return "?";
}

nlohmann::json Event::ToJson() const {
  nlohmann::json j;
  switch (kind_) {
    case EventKind::kSingleton:
      j["kind"] = "singleton";
      j["value"] = values_.front().ToJson();
      break;
    case EventKind::kValueSet: {
      j["kind"] = "set";
      nlohmann::json values = nlohmann::json::array();
      for (const auto& v : values_) values.push_back(v.ToJson());
      j["values"] = values;
      break;
    }
    case EventKind::kAtLeast:
      j["kind"] = "at_least";
      j["threshold"] = threshold_;
      break;
    case EventKind::kPattern: {
      j["kind"] = "pattern";
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : terms_) {
        terms.push_back(
            {{"index", t.index}, {"op", OpText(t.op)}, {"value", t.value}});
      }
      j["terms"] = terms;
      break;
    }
  }
  return j;
}

namespace {

constexpr size_t kMaxSingletons = 48;
constexpr size_t kMaxListSingletons = 16;

// Smallest observed value whose cumulative share reaches q.
int64_t Quantile(const std::map<int64_t, int64_t>& hist, int64_t total,
                 double q) {
  double target = q * static_cast<double>(total);
  int64_t running = 0;
  for (const auto& [v, c] : hist) {
    running += c;
    if (static_cast<double>(running) >= target) return v;
  }
  return hist.rbegin()->first;
}

class EventList {
 public:
  void Add(Event e) {
    if (seen_.insert(e).second) events_.push_back(std::move(e));
  }
  std::vector<Event> Take() { return std::move(events_); }

 private:
  std::set<Event> seen_;
  std::vector<Event> events_;
};

// Most frequent values first, ties by value.
std::vector<Value> MostFrequent(const OutputHistogram& samples, size_t cap) {
  std::vector<std::pair<int64_t, Value>> ranked;
  for (const auto& [v, c] : samples) ranked.emplace_back(c, v);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Value> out;
  for (size_t i = 0; i < ranked.size() && i < cap; ++i) {
    out.push_back(ranked[i].second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void IntEvents(const OutputHistogram& samples, EventList* events) {
  for (auto& v : MostFrequent(samples, kMaxSingletons)) {
    events->Add(Event::Singleton(v));
  }
  std::map<int64_t, int64_t> hist;
  int64_t total = 0;
  for (const auto& [v, c] : samples) {
    hist[v.AsInt()] += c;
    total += c;
  }
  int64_t lowest = hist.begin()->first;
  for (int step = 1; step <= 19; ++step) {
    int64_t t = Quantile(hist, total, 0.05 * step);
    if (t > lowest) events->Add(Event::AtLeast(t));
  }
}

void BinaryListEvents(EventList* events) {
  for (int len = 1; len <= 3; ++len) {
    for (int bits = (1 << len) - 1; bits >= 0; --bits) {
      std::vector<PatternTerm> terms;
      for (int i = 0; i < len; ++i) {
        bool top = (bits >> (len - 1 - i)) & 1;
        terms.push_back({i, top ? TermOp::kGe : TermOp::kLt, 1});
      }
      events->Add(Event::Pattern(std::move(terms)));
    }
  }
}

void IntListEvents(const OutputHistogram& samples, EventList* events) {
  size_t max_len = 0;
  for (const auto& [v, c] : samples) {
    max_len = std::max(max_len, v.AsList().size());
  }
  std::map<int64_t, int64_t> pooled;
  int64_t pooled_total = 0;
  for (size_t i = 0; i < max_len; ++i) {
    std::map<int64_t, int64_t> hist;
    int64_t total = 0;
    for (const auto& [v, c] : samples) {
      const auto& list = v.AsList();
      if (i < list.size()) {
        hist[list[i]] += c;
        total += c;
        pooled[list[i]] += c;
        pooled_total += c;
      }
    }
    int index = static_cast<int>(i);
    int64_t lowest = hist.begin()->first;
    for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      int64_t t = Quantile(hist, total, q);
      if (t > lowest) events->Add(Event::Pattern({{index, TermOp::kGe, t}}));
    }
    for (double q : {0.25, 0.5, 0.75}) {
      events->Add(
          Event::Pattern({{index, TermOp::kEq, Quantile(hist, total, q)}}));
    }
  }
  if (pooled_total > 0) {
    for (double q : {0.25, 0.5, 0.75}) {
      int64_t t = Quantile(pooled, pooled_total, q);
      std::vector<PatternTerm> above, below;
      for (size_t i = 0; i < max_len; ++i) {
        above.push_back({static_cast<int>(i), TermOp::kGe, t});
        below.push_back({static_cast<int>(i), TermOp::kLt, t});
      }
      events->Add(Event::Pattern(std::move(above)));
      events->Add(Event::Pattern(std::move(below)));
    }
  }
}

}  // namespace

std::vector<Event> GenEvents(Type output_type, const OutputHistogram& samples) {
  if (samples.empty()) {
    throw ContractError("event generation needs at least one sample");
  }
  EventList events;
  switch (output_type) {
    case Type::kInt:
      IntEvents(samples, &events);
      break;
    case Type::kBool:
      for (const auto& [v, c] : samples) events.Add(Event::Singleton(v));
      break;
    case Type::kList: {
      bool binary = true;
      for (const auto& [v, c] : samples) {
        for (int64_t x : v.AsList()) binary = binary && (x == 0 || x == 1);
      }
      if (binary) {
        BinaryListEvents(&events);
      } else {
        IntListEvents(samples, &events);
      }
      for (auto& v : MostFrequent(samples, kMaxListSingletons)) {
        events.Add(Event::Singleton(v));
      }
      break;
    }
  }
  return events.Take();
}

}  // namespace dpsynth::tester
