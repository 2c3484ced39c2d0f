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

#include "dpsynth/tester/tester.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "dpsynth/common/error.h"
#include "dpsynth/common/parallel.h"
#include "dpsynth/common/rng.h"
#include "dpsynth/tester/fisher.h"

namespace dpsynth::tester {
namespace {

using lang::Value;

constexpr int64_t kChunk = 5000;

nlohmann::json VecJson(const std::vector<int64_t>& v) {
  return nlohmann::json(v);
}

// Runs every (input, side) cell `trials` times; chunks are independent
// streams so the result does not depend on the thread count.
std::vector<OutputHistogram> RunCells(
    const lang::ConcreteMechanism& mechanism,
    const std::vector<const std::vector<int64_t>*>& inputs, int64_t trials,
    uint64_t seed, int threads) {
  size_t chunks = static_cast<size_t>((trials + kChunk - 1) / kChunk);
  std::vector<OutputHistogram> parts(inputs.size() * chunks);
  ParallelFor(parts.size(), threads, [&](size_t task) {
    size_t cell = task / chunks;
    size_t chunk = task % chunks;
    RngStream rng = RngStream(MixSeed(seed, cell)).Split(chunk);
    int64_t begin = static_cast<int64_t>(chunk) * kChunk;
    int64_t count = std::min(kChunk, trials - begin);
    auto& hist = parts[task];
    for (int64_t i = 0; i < count; ++i) {
      ++hist[mechanism.Run(*inputs[cell], rng)];
    }
  });
  std::vector<OutputHistogram> cells(inputs.size());
  for (size_t task = 0; task < parts.size(); ++task) {
    auto& dst = cells[task / chunks];
    for (const auto& [v, c] : parts[task]) dst[v] += c;
  }
  return cells;
}

int64_t CountEvent(const Event& e, const OutputHistogram& hist) {
  int64_t count = 0;
  for (const auto& [v, c] : hist) {
    if (e.Contains(v)) count += c;
  }
  return count;
}

struct Scored {
  size_t pair = 0;
  size_t event = 0;
  bool swapped = false;  // true: d2 plays the role of the larger side
  int64_t c1 = 0;
  int64_t c2 = 0;
  std::vector<double> p;  // per test epsilon, then the target last
  double gap = 0.0;

  auto Key() const { return std::make_tuple(pair, event, swapped); }
};

std::vector<double> PValues(int64_t c1, int64_t c2, int64_t n,
                            const std::vector<double>& eps, double target) {
  std::vector<double> p;
  p.reserve(eps.size() + 1);
  for (double e : eps) p.push_back(HypothesisTest(c1, c2, n, e));
  p.push_back(HypothesisTest(c1, c2, n, target));
  return p;
}

}  // namespace

nlohmann::json Counterexample::ToJson() const {
  return {{"d1", VecJson(d1)},
          {"d2", VecJson(d2)},
          {"event", event.ToJson()},
          {"p", p_value},
          {"test_epsilon", test_epsilon},
          {"rho1", rho1},
          {"rho2", rho2},
          {"trials", trials},
          {"seed", seed}};
}

Counterexample ConfirmedCandidate::AtTestEpsilon(
    size_t i, const std::vector<double>& eps, int64_t trials,
    uint64_t seed) const {
  return {d1, d2, event, p_values.at(i), eps.at(i), rho1, rho2, trials, seed};
}

Counterexample ConfirmedCandidate::AtTarget(double target, int64_t trials,
                                            uint64_t seed) const {
  return {d1, d2, event, p_at_target, target, rho1, rho2, trials, seed};
}

std::optional<Counterexample> TestReport::Best() const {
  if (confirmed.empty()) return std::nullopt;
  return confirmed.front().AtTarget(target_epsilon, trials, seed);
}

std::vector<Counterexample> TestReport::Records() const {
  std::vector<Counterexample> out;
  for (const auto& c : confirmed) {
    for (size_t i = 0; i < test_epsilons.size(); ++i) {
      out.push_back(c.AtTestEpsilon(i, test_epsilons, trials, seed));
    }
  }
  return out;
}

TestReport TestMechanism(const lang::ConcreteMechanism& mechanism,
                         double target_epsilon, const TesterOptions& options) {
  if (!(target_epsilon > 0.0)) {
    throw ContractError("target epsilon must be positive");
  }
  if (options.trials <= 0) throw ContractError("trials must be positive");
  const auto& program = mechanism.program();
  const auto& sketch = program.sketch();
  std::string pattern =
      options.adjacency.empty() ? sketch.adjacency : options.adjacency;
  auto pairs = GenInputPairs(pattern, static_cast<int>(program.size()));

  TestReport report;
  report.target_epsilon = target_epsilon;
  report.trials = options.trials;
  report.seed = options.seed;
  report.test_epsilons = options.test_epsilons;
  if (report.test_epsilons.empty()) {
    for (double f : {0.8, 1.0, 1.2}) {
      report.test_epsilons.push_back(f * target_epsilon);
    }
  }
  const auto& eps = report.test_epsilons;
  const int64_t n = options.trials;

  std::vector<const std::vector<int64_t>*> inputs;
  for (const auto& p : pairs) {
    inputs.push_back(&p.d1);
    inputs.push_back(&p.d2);
  }

  // Stage 1: choose events and score every orientation.
  auto cells = RunCells(mechanism, inputs, n, MixSeed(options.seed, 1),
                        options.threads);
  std::vector<std::vector<Event>> events(pairs.size());
  std::vector<Scored> scored;
  for (size_t pi = 0; pi < pairs.size(); ++pi) {
    const auto& h1 = cells[2 * pi];
    const auto& h2 = cells[2 * pi + 1];
    OutputHistogram pooled = h1;
    for (const auto& [v, c] : h2) pooled[v] += c;
    auto all = GenEvents(sketch.output_type, pooled);
    struct Counted {
      Event e;
      int64_t a, b;
    };
    std::vector<Counted> counted;
    for (auto& e : all) {
      int64_t a = CountEvent(e, h1);
      int64_t b = CountEvent(e, h2);
      counted.push_back({std::move(e), a, b});
    }
    std::stable_sort(counted.begin(), counted.end(),
                     [](const Counted& x, const Counted& y) {
                       return std::llabs(x.a - x.b) > std::llabs(y.a - y.b);
                     });
    if (counted.size() > options.max_events) counted.resize(options.max_events);
    for (size_t ei = 0; ei < counted.size(); ++ei) {
      const auto& c = counted[ei];
      events[pi].push_back(c.e);
      for (bool swapped : {false, true}) {
        Scored s;
        s.pair = pi;
        s.event = ei;
        s.swapped = swapped;
        s.c1 = swapped ? c.b : c.a;
        s.c2 = swapped ? c.a : c.b;
        if (s.c1 == 0) continue;  // cannot witness anything
        s.gap = static_cast<double>(s.c1 - s.c2) / static_cast<double>(n);
        s.p = PValues(s.c1, s.c2, n, eps, target_epsilon);
        scored.push_back(std::move(s));
      }
    }
  }

  // Union of the top candidates per test epsilon and at the target.
  std::vector<Scored> chosen;
  std::set<std::tuple<size_t, size_t, bool>> chosen_keys;
  for (size_t t = 0; t <= eps.size(); ++t) {
    std::vector<const Scored*> order;
    for (const auto& s : scored) order.push_back(&s);
    std::stable_sort(order.begin(), order.end(),
                     [t](const Scored* a, const Scored* b) {
                       if (a->p[t] != b->p[t]) return a->p[t] < b->p[t];
                       return a->gap > b->gap;
                     });
    int taken = 0;
    for (const Scored* s : order) {
      if (taken >= options.confirm) break;
      ++taken;
      if (chosen_keys.insert(s->Key()).second) chosen.push_back(*s);
    }
  }

  // Stage 2: fresh runs on the inputs that carry a chosen candidate.
  std::vector<size_t> rerun_pairs;
  for (const auto& s : chosen) rerun_pairs.push_back(s.pair);
  std::sort(rerun_pairs.begin(), rerun_pairs.end());
  rerun_pairs.erase(std::unique(rerun_pairs.begin(), rerun_pairs.end()),
                    rerun_pairs.end());
  std::vector<const std::vector<int64_t>*> rerun_inputs;
  for (size_t pi : rerun_pairs) {
    rerun_inputs.push_back(&pairs[pi].d1);
    rerun_inputs.push_back(&pairs[pi].d2);
  }
  auto fresh = RunCells(mechanism, rerun_inputs, n, MixSeed(options.seed, 2),
                        options.threads);

  for (const auto& s : chosen) {
    size_t slot = static_cast<size_t>(
        std::lower_bound(rerun_pairs.begin(), rerun_pairs.end(), s.pair) -
        rerun_pairs.begin());
    const auto& h1 = fresh[2 * slot];
    const auto& h2 = fresh[2 * slot + 1];
    const Event& e = events[s.pair][s.event];
    int64_t a = CountEvent(e, h1);
    int64_t b = CountEvent(e, h2);
    int64_t c1 = s.swapped ? b : a;
    int64_t c2 = s.swapped ? a : b;
    if (c1 + c2 == 0) continue;
    ConfirmedCandidate cc;
    const auto& pair = pairs[s.pair];
    cc.d1 = s.swapped ? pair.d2 : pair.d1;
    cc.d2 = s.swapped ? pair.d1 : pair.d2;
    cc.event = e;
    cc.rho1 = static_cast<double>(c1) / static_cast<double>(n);
    cc.rho2 = static_cast<double>(c2) / static_cast<double>(n);
    auto p = PValues(c1, c2, n, eps, target_epsilon);
    cc.p_at_target = p.back();
    p.pop_back();
    cc.p_values = std::move(p);
    report.confirmed.push_back(std::move(cc));
  }
  std::stable_sort(report.confirmed.begin(), report.confirmed.end(),
                   [](const ConfirmedCandidate& a, const ConfirmedCandidate& b) {
                     return a.p_at_target < b.p_at_target;
                   });
  report.min_p.assign(eps.size(), 1.0);
  for (const auto& c : report.confirmed) {
    for (size_t i = 0; i < eps.size(); ++i) {
      report.min_p[i] = std::min(report.min_p[i], c.p_values[i]);
    }
  }
  return report;
}

}  // namespace dpsynth::tester
