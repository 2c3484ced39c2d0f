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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance 3 5        run only criteria 3 and 5

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpsynth/cli/commands.h"
#include "dpsynth/common/rng.h"
#include "dpsynth/dist/distribution.h"
#include "dpsynth/lang/interpreter.h"
#include "dpsynth/search/bank.h"
#include "dpsynth/search/examples.h"
#include "dpsynth/search/optimizer.h"
#include "dpsynth/synth/candidates.h"
#include "dpsynth/synth/grammar.h"
#include "dpsynth/synth/synth.h"
#include "dpsynth/tester/adjacency.h"
#include "dpsynth/tester/fisher.h"
#include "dpsynth/tester/tester.h"
#include "support/corpus.h"
#include "support/stats.h"

namespace dpsynth {
namespace {

using lang::NoiseVector;
using lang::Value;
using tester::Event;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

std::shared_ptr<const lang::BoundProgram> Micro(const std::string& body) {
  auto sketch = testing::Parse(
      "mechanism Micro\ninput q\narg len : size\narg eps : epsilon\n"
      "adjacency one_differ\nhole ?1 Lap\nbegin\n" +
      body + "end\n");
  return std::make_shared<const lang::BoundProgram>(sketch,
                                                    testing::Bind(*sketch, 1));
}

lang::ConcreteMechanism Corpus(const std::string& stem,
                               const std::string& noise) {
  auto sketch = testing::LoadCorpus(stem);
  auto program = std::make_shared<const lang::BoundProgram>(
      sketch, testing::Bind(*sketch, 5));
  return lang::ConcreteMechanism(program, NoiseVector::Parse(noise));
}

// 1. Discrete Laplace normalizer, tail mass and sampler.
Outcome Distributions() {
  std::ostringstream detail;
  bool ok = true;
  for (double b : {0.5, 1.0, 2.0, 4.0}) {
    double q = std::exp(-1.0 / b);
    double closed = (1 + q) / (1 - q);
    double lib = std::exp(dist::DiscreteLaplace::LogNormalizer(b));
    double from_pmf = 1.0 / dist::DiscreteLaplace(0, b).Pmf(0);
    double err = std::max(std::fabs(lib - closed), std::fabs(from_pmf - closed));
    ok = ok && err <= 1e-12;
    dist::DiscreteLaplace d(3, b);
    const int k = 25;
    double mass = 0.0;
    for (int64_t v = 3 - k; v <= 3 + k; ++v) mass += d.Pmf(v);
    double tail = 2.0 * std::pow(q, k + 1) / (1 + q);
    ok = ok && std::fabs(mass + tail - 1.0) <= 1e-9;
    detail << "b=" << b << " norm_err=" << Fmt(err)
           << " mass_err=" << Fmt(std::fabs(mass + tail - 1.0)) << " ";
  }
  dist::DiscreteLaplace d(0, 2.0);
  RngStream rng(20240601);
  const int draws = 100000;
  std::vector<double> observed(23, 0.0), expected(23, 0.0);
  for (int i = 0; i < draws; ++i) {
    int64_t v = d.Sample(rng);
    observed[v < -10 ? 0 : v > 10 ? 22 : v + 11] += 1;
  }
  expected[0] = d.Cdf(-11) * draws;
  expected[22] = (1 - d.Cdf(10)) * draws;
  for (int v = -10; v <= 10; ++v) expected[v + 11] = d.Pmf(v) * draws;
  double p = testing::ChiSquarePValue(observed, expected);
  ok = ok && p > 1e-3;
  detail << "chi2_p=" << Fmt(p);
  return {ok, detail.str()};
}

// 2. Importance estimates against closed forms.
Outcome Estimator() {
  std::ostringstream detail;
  bool ok = true;
  search::BankOptions opt;
  opt.presamples = 100000;
  opt.seed = 1;
  search::PresampleBank point(
      Micro("x := 0 + Lap(?1)\nreturn x\n"),
      {{{0}, {1}, Event::Singleton(Value::Int(0)), {}, 0.0, 1.0}}, opt);
  for (double b : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    double truth = dist::DiscreteLaplace(0, b).Pmf(0);
    double rel = point.EstimateEventProb(0, 0, NoiseVector({b})) / truth - 1;
    ok = ok && std::fabs(rel) <= 0.05;
    detail << "b=" << b << " rel=" << Fmt(rel) << " ";
  }
  opt.seed = 2;
  // y = -(q[0] + noise), so {y >= 0} is {x <= 0}.
  search::PresampleBank shift(
      Micro("x := q[0] + Lap(?1)\ny := 0 - x\nreturn y\n"),
      {{{0}, {1}, Event::AtLeast(0), {}, 0.0, 1.0}}, opt);
  double loss = shift.ExampleLosses(NoiseVector({2.0})).front();
  double rel = loss / std::exp(0.5) - 1;
  ok = ok && std::fabs(rel) <= 0.05;
  detail << "loss=" << Fmt(loss) << " rel=" << Fmt(rel);
  return {ok, detail.str()};
}

// 3. Calibration shape on a tight mechanism.
Outcome Calibration() {
  tester::TesterOptions opt;
  opt.trials = 100000;
  opt.seed = 3;
  opt.test_epsilons = {0.2, 0.9};
  auto report = tester::TestMechanism(Corpus("noisymax1", "4"), 0.5, opt);
  bool ok = report.min_p[0] < 0.05 && report.min_p[1] > 0.9;
  return {ok, "min_p(0.2)=" + Fmt(report.min_p[0]) +
                  " min_p(0.9)=" + Fmt(report.min_p[1])};
}

// 4. A noiseless sum is caught.
Outcome Detection() {
  tester::TesterOptions opt;
  opt.seed = 4;
  auto best =
      tester::TestMechanism(Corpus("sum", "bot"), 0.5, opt).Best();
  bool ok = best && best->p_value < 1e-4;
  return {ok, best ? "p=" + Fmt(best->p_value) : "no counterexample"};
}

struct RankCheck {
  std::string stem;
  std::vector<std::string> want;  // every one of these ...
  size_t within;                  // ... among the first `within` verified
  bool output_hole_bottom = false;
};

// 5. Final ranks on the corpus.
Outcome Ranks() {
  const std::vector<RankCheck> checks = {
      {"sum", {"(1/eps)"}, 1},
      {"histogram", {"(1/eps)"}, 1},
      {"noisymax1", {"(2/eps)"}, 1},
      {"svt", {"(2/eps, 4/eps)"}, 1},
      {"noisymax2", {"(2/eps, bot)"}, 1},
      {"expnoisymax", {}, 1, true},
      {"abovet1", {"(2/eps, 4/eps)", "(3/eps, 3/eps)"}, 2},
      {"abovet2", {"(2/eps, 4/eps, bot)"}, 2},
      {"smartsum", {"(2/eps, 2/eps)"}, 5},
  };
  bool all = true;
  std::ostringstream detail;
  for (const auto& c : checks) {
    auto sketch = testing::LoadCorpus(c.stem);
    auto start = std::chrono::steady_clock::now();
    auto report = synth::Synthesize(sketch, synth::SynthConfig());
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    std::vector<std::string> top;
    for (size_t i = 0; i < std::min(c.within, report.verified.size()); ++i) {
      top.push_back(synth::ToString(report.verified[i].exprs, *sketch));
    }
    bool ok = !top.empty();
    for (const auto& w : c.want) {
      ok = ok && std::find(top.begin(), top.end(), w) != top.end();
    }
    if (c.output_hole_bottom && ok) {
      ok = report.verified.front().exprs.back().bottom;
    }
    all = all && ok;
    std::string got;
    for (const auto& t : top) got += (got.empty() ? "" : " ") + t;
    std::cout << "  " << c.stem << ": " << (ok ? "ok" : "MISS") << " top["
              << c.within << "]=" << (got.empty() ? "none" : got) << " ("
              << Fmt(secs) << " s)\n";
    if (!ok) detail << c.stem << " ";
  }
  return {all, all ? "all benchmarks" : "missed: " + detail.str()};
}

// 6. Objective landscape for the threshold sketch with the output hole off.
Outcome Region() {
  const std::string path = testing::CorpusPath("abovet2");
  cli::RunConfig config;
  cli::GridSpec grid;
  grid.low = 1;
  grid.high = 16;
  grid.base = "1,1,bot";
  std::ostringstream csv, err;
  if (cli::CmdGrid(path, grid, config, csv, err) != cli::kOk) {
    return {false, "grid failed: " + err.str()};
  }
  const double eps = 0.5;
  const double lambda = config.synth.lambda;
  std::set<std::pair<int, int>> band;
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    double a, b, obj, log_obj;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &obj,
                    &log_obj) != 4) {
      continue;
    }
    // Both grid holes carry noise, so the regularizer is 2 * lambda.
    if (log_obj - 2 * lambda <= eps / 2) {
      band.insert({static_cast<int>(a), static_cast<int>(b)});
    }
  }
  bool band_ok = band.count({4, 8}) && band.count({6, 6});

  // Same examples and bank as the grid, then the optimizer with the output
  // hole pinned off.
  auto sketch = testing::LoadCorpus("abovet2");
  const auto& sc = config.synth;
  auto program = std::make_shared<const lang::BoundProgram>(
      sketch, synth::FixParams(*sketch, sc.gamma));
  search::SelectOptions sel;
  sel.scale_grid = sc.scale_grid;
  sel.zone_low = sc.zone_low;
  sel.zone_high = sc.zone_high;
  sel.min_support = sc.min_support;
  sel.tester.trials = sc.trials;
  sel.tester.seed = MixSeed(sc.seed, 1);
  auto selection = search::SelectExamplesWithFallback(
      program, search::DirectionSet(sketch->num_holes()), sel);
  search::BankOptions bopt;
  bopt.presamples = sc.presamples;
  bopt.proposal_scale = sc.proposal_scale;
  bopt.seed = MixSeed(sc.seed, 2);
  search::PresampleBank bank(program, selection.examples, bopt);
  search::DeOptions de;
  de.population = sc.population;
  de.steps = sc.steps_per_hole * 2;
  de.seed = MixSeed(sc.seed, 3);
  de.pinned[2] = 0.0;
  auto region = search::GetNoiseRegion(bank, eps, lambda, de);
  double best = region.members.front().objective;
  double low = search::Objective(bank, NoiseVector({1.0, 1.0, std::nullopt}),
                                 eps, lambda);
  double high = search::Objective(
      bank, NoiseVector({16.0, 16.0, std::nullopt}), eps, lambda);
  bool de_ok = best <= low && best <= high;
  std::ostringstream detail;
  detail << "band_cells=" << band.size() << " (4,8)=" << band.count({4, 8})
         << " (6,6)=" << band.count({6, 6}) << " de_best=" << Fmt(best)
         << " at " << region.members.front().noise.ToString()
         << " obj(1,1)=" << Fmt(low) << " obj(16,16)=" << Fmt(high);
  return {band_ok && de_ok, detail.str()};
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 7. Two identical synth runs write identical reports.
Outcome Determinism() {
  auto dir = std::filesystem::temp_directory_path() / "dpsynth_acceptance";
  std::filesystem::create_directories(dir);
  cli::RunConfig config;
  config.synth.trials = 4000;
  config.synth.presamples = 10000;
  config.synth.population = 20;
  config.synth.steps_per_hole = 60;
  std::string paths[2];
  for (int run = 0; run < 2; ++run) {
    paths[run] = (dir / ("run" + std::to_string(run) + ".json")).string();
    config.out = paths[run];
    config.synth.threads = run == 0 ? 1 : 0;
    std::ostringstream out, err;
    int code = cli::CmdSynth(testing::CorpusPath("noisymax1"), config, out,
                             err);
    if (code == cli::kUsage) return {false, "synth failed: " + err.str()};
  }
  std::string a = Slurp(paths[0]);
  std::string b = Slurp(paths[1]);
  return {!a.empty() && a == b,
          std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
              " bytes, " + (a == b ? "identical" : "different")};
}

// Independent L1 witness search.
bool Witness(const std::vector<std::optional<double>>& v,
             const search::NoiseRegion& region, double radius) {
  for (const auto& m : region.members) {
    double total = 0.0;
    bool bad = false;
    for (size_t h = 0; h < v.size(); ++h) {
      if (!v[h]) {
        bad = bad || m.noise[h].has_value();
        continue;
      }
      total += std::fabs(*v[h] - (m.noise[h] ? *m.noise[h] : 0.0));
    }
    if (!bad && total <= radius) return true;
  }
  return false;
}

// 8. Property suites in compact form.
Outcome Properties() {
  std::ostringstream detail;
  // Pruning against brute force over all 25^n vectors.
  bool prune_ok = true;
  synth::Grammar g;
  for (const char* stem : {"sum", "noisymax2", "abovet2"}) {
    auto sketch = testing::LoadCorpus(stem);
    auto gamma = testing::Bind(*sketch, 5);
    const size_t holes = sketch->holes.size();
    RngStream rng(77 + holes);
    search::NoiseRegion region;
    for (int i = 0; i < 30; ++i) {
      std::vector<std::optional<double>> p;
      for (size_t h = 0; h < holes; ++h) {
        double x = rng.UniformOpen() * 16.0;
        if (x >= 2.0) p.push_back(x);
        else p.push_back(std::nullopt);
      }
      NoiseVector n(p);
      region.members.push_back({n.AsPoint(), n, 0.0});
    }
    auto kept = synth::EnumerateAndPrune(g, region, *sketch, gamma, 3.0);
    std::set<std::string> expect;
    size_t total = 1;
    for (size_t h = 0; h < holes; ++h) total *= g.size();
    for (size_t code = 0; code < total; ++code) {
      synth::ExprVector v(holes);
      std::vector<std::optional<double>> vals(holes);
      size_t rest = code;
      for (size_t h = holes; h-- > 0;) {
        v[h] = g.elements()[rest % g.size()];
        rest /= g.size();
        if (auto r = v[h].Eval(*sketch, gamma)) vals[h] = ToDouble(*r);
      }
      if (Witness(vals, region, 3.0)) expect.insert(synth::ToString(v, *sketch));
    }
    std::set<std::string> got;
    for (const auto& v : kept) got.insert(synth::ToString(v, *sketch));
    prune_ok = prune_ok && got == expect && got.size() == kept.size();
  }
  detail << "pruning=" << (prune_ok ? "ok" : "bad");

  bool mono_ok = true;
  for (int64_t c1 : {0, 40, 300, 650, 1000}) {
    for (int64_t c2 : {0, 30, 250, 600, 1000}) {
      double prev = -1.0;
      for (double e = 0.0; e <= 3.0; e += 0.05) {
        double p = tester::HypothesisTest(c1, c2, 1000, e);
        mono_ok = mono_ok && p >= prev - 1e-12 && p >= 0 && p <= 1;
        prev = p;
      }
    }
  }
  detail << " p_monotone=" << (mono_ok ? "ok" : "bad");

  search::BankOptions bopt;
  bopt.presamples = 20000;
  bopt.seed = 4;
  search::PresampleBank bank(
      Micro("x := q[0] + Lap(?1)\ny := 0 - x\nreturn y\n"),
      {{{0}, {1}, Event::AtLeast(0), {}, 0.0, 1.0}}, bopt);
  search::DeOptions de;
  de.population = 12;
  de.steps = 60;
  de.seed = 6;
  auto region = search::GetNoiseRegion(bank, 0.5, 1.0, de);
  bool de_ok = region.best_history.size() == 61;
  for (size_t i = 1; i < region.best_history.size(); ++i) {
    de_ok = de_ok && region.best_history[i] <= region.best_history[i - 1];
  }
  detail << " de_monotone=" << (de_ok ? "ok" : "bad");

  bool adj_ok = true;
  size_t pairs = 0;
  for (const auto& pattern : tester::PatternNames()) {
    for (int len = 1; len <= 12; ++len) {
      for (const auto& p : tester::GenInputPairs(pattern, len)) {
        ++pairs;
        adj_ok = adj_ok && tester::IsAdjacent(p.d1, p.d2) && p.d1 != p.d2 &&
                 p.d1.size() == static_cast<size_t>(len);
        if (pattern == "one_differ") {
          int diffs = 0;
          for (int i = 0; i < len; ++i) diffs += p.d1[i] != p.d2[i];
          adj_ok = adj_ok && diffs == 1;
        }
      }
    }
  }
  detail << " adjacency=" << (adj_ok ? "ok" : "bad") << " over " << pairs
         << " pairs";
  return {prune_ok && mono_ok && de_ok && adj_ok, detail.str()};
}

}  // namespace
}  // namespace dpsynth

int main(int argc, char** argv) {
  using dpsynth::Outcome;
  const std::map<int, std::pair<std::string, std::function<Outcome()>>> all = {
      {1, {"distribution correctness", dpsynth::Distributions}},
      {2, {"estimator oracle", dpsynth::Estimator}},
      {3, {"tester calibration", dpsynth::Calibration}},
      {4, {"non-private detection", dpsynth::Detection}},
      {5, {"end-to-end ranks", dpsynth::Ranks}},
      {6, {"region sanity", dpsynth::Region}},
      {7, {"determinism", dpsynth::Determinism}},
      {8, {"property suites", dpsynth::Properties}},
  };
  std::vector<int> chosen;
  for (int i = 1; i < argc; ++i) chosen.push_back(std::atoi(argv[i]));
  if (chosen.empty()) {
    for (const auto& [id, unused] : all) chosen.push_back(id);
  }
  bool ok = true;
  for (int id : chosen) {
    auto it = all.find(id);
    if (it == all.end()) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    Outcome r;
    try {
      r = it->second.second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << id << " (" << it->second.first
              << "): " << (r.pass ? "PASS" : "FAIL") << "  " << r.detail
              << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
