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

#include "dpsynth/synth/synth.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "dpsynth/common/rng.h"

namespace dpsynth::synth {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

nlohmann::json BindingJson(const lang::ArgBinding& b) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, v] : b.values()) j[name] = FormatRational(v);
  return j;
}

// Runs \p fn, tagging any library error with \p phase.
template <typename Fn>
auto InPhase(Phase phase, double* seconds, Fn&& fn) {
  auto start = Clock::now();
  struct Stop {
    Clock::time_point start;
    double* out;
    ~Stop() { *out = Seconds(start); }
  } stop{start, seconds};
  try {
    return fn();
  } catch (const PhaseError&) {
    throw;
  } catch (const Error& e) {
    throw PhaseError(phase, e.what());
  }
}

// Octaves of the base proposal spanning every candidate scale at the
// binding, clipped to six octaves either way.
std::vector<double> ProposalLadder(const std::vector<ExprVector>& cands,
                                   const lang::MechanismSketch& sketch,
                                   const lang::ArgBinding& binding,
                                   double base, const std::string& t_arg) {
  int lo = -2, hi = 2;
  for (const auto& c : cands) {
    for (const auto& e : c) {
      auto v = e.Eval(sketch, binding, t_arg);
      if (!v) continue;
      double j = std::log2(ToDouble(*v) / base);
      lo = std::min(lo, static_cast<int>(std::floor(j)));
      hi = std::max(hi, static_cast<int>(std::ceil(j)));
    }
  }
  lo = std::max(lo, -6);
  hi = std::min(hi, 6);
  std::vector<double> out;
  for (int j = lo; j <= hi; ++j) out.push_back(std::ldexp(base, j));
  return out;
}

}  // namespace

const char* PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kInit:
      return "init";
    case Phase::kOpti:
      return "opti";
    case Phase::kEnum:
      return "enum";
    case Phase::kVerify:
      return "verify";
  }
  return "?";
}

nlohmann::json SynthConfig::ToJson() const {
  nlohmann::json gamma_json = nlohmann::json::object();
  for (const auto& [name, v] : gamma) gamma_json[name] = FormatRational(v);
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : test_points) {
    points.push_back({{"epsilon", FormatRational(p.epsilon)}, {"size", p.size}});
  }
  return {{"seed", seed},
          {"trials", trials},
          {"presamples", presamples},
          {"lambda", lambda},
          {"population", population},
          {"steps_per_hole", steps_per_hole},
          {"zone", {zone_low, zone_high}},
          {"min_support", min_support},
          {"proposal_scale", proposal_scale},
          {"radius", radius},
          {"fallback_radius", fallback_radius},
          {"slack", slack},
          {"reject_p", reject_p},
          {"verify_per_hole", verify_per_hole},
          {"scale_grid", scale_grid},
          {"grammar", grammar.ToJson()},
          {"gamma", gamma_json},
          {"test_points", points}};
}

lang::ArgBinding FixParams(const lang::MechanismSketch& sketch,
                           const std::map<std::string, Rational>& overrides) {
  lang::ArgBinding b;
  for (const auto& arg : sketch.args) {
    Rational v(1);
    switch (arg.type) {
      case lang::ArgType::kSize:
        v = Rational(5);
        break;
      case lang::ArgType::kEpsilon:
        v = Rational(1, 2);
        break;
      default:
        if (arg.name == "T" || arg.name == "M") v = Rational(2);
        break;
    }
    b.Set(arg.name, v);
  }
  for (const auto& [name, v] : overrides) {
    if (!sketch.FindArg(name)) {
      throw ContractError("no argument named '" + name + "'");
    }
    b.Set(name, v);
  }
  lang::ValidateBinding(sketch, b);
  return b;
}

lang::ArgBinding Rebind(const lang::MechanismSketch& sketch,
                        const lang::ArgBinding& gamma, const TestPoint& point) {
  lang::ArgBinding b = gamma;
  b.Set(sketch.EpsilonArg().name, point.epsilon);
  b.Set(sketch.SizeArg().name, Rational(point.size));
  lang::ValidateBinding(sketch, b);
  return b;
}

std::vector<int64_t> Stretch(const std::vector<int64_t>& input,
                             size_t length) {
  if (input.empty()) throw ContractError("cannot stretch an empty input");
  std::vector<int64_t> out(length);
  for (size_t i = 0; i < length; ++i) out[i] = input[i * input.size() / length];
  return out;
}

search::ExampleSet StretchExamples(const search::ExampleSet& examples,
                                   size_t length) {
  search::ExampleSet out;
  for (const auto& e : examples) {
    size_t old = e.d1.size();
    int list_len = e.event.ListLength();
    if (list_len >= 0 && length != old &&
        (static_cast<size_t>(list_len) == old ||
         static_cast<size_t>(list_len) > length)) {
      continue;
    }
    if (e.event.MaxIndex() >= static_cast<int>(length)) continue;
    search::Example s = e;
    s.d1 = Stretch(e.d1, length);
    s.d2 = Stretch(e.d2, length);
    if (s.d1 == s.d2) continue;
    search::AddUnique(&out, std::move(s));
  }
  return out;
}

nlohmann::json PhaseTimes::ToJson() const {
  return {{"init", init},
          {"opti", opti},
          {"enum", enumerate},
          {"verify", verify},
          {"total", total}};
}

nlohmann::json SynthReport::ToJson(const lang::MechanismSketch& sketch) const {
  const std::string& t_arg = config.value("grammar", nlohmann::json::object())
                                 .value("t_arg", std::string("T"));
  nlohmann::json ex = nlohmann::json::array();
  for (const auto& e : examples) ex.push_back(e.ToJson());
  auto list = [&](const std::vector<RankedCandidate>& v, bool with_rank) {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t i = 0; i < v.size(); ++i) {
      nlohmann::json j = v[i].ToJson(sketch, t_arg);
      if (with_rank) j["rank"] = i + 1;
      arr.push_back(std::move(j));
    }
    return arr;
  };
  return {{"mechanism", mechanism},
          {"config", config},
          {"gamma", BindingJson(gamma)},
          {"examples", ex},
          {"examples_widened", examples_widened},
          {"examples_unfiltered", examples_unfiltered},
          {"region", region.ToJson()},
          {"radius", radius_used},
          {"enumerated", enumerated},
          {"ranked", list(ranked, true)},
          {"verified", list(verified, true)},
          {"rejected", list(rejected, false)}};
}

std::string SynthReport::SummaryTable(
    const lang::MechanismSketch& sketch) const {
  const std::string t_arg = config.value("grammar", nlohmann::json::object())
                                .value("t_arg", std::string("T"));
  std::ostringstream out;
  out << mechanism << ": " << examples.size() << " examples, "
      << enumerated << " candidates, " << verified.size() << " verified\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-5s %-36s %5s %8s %9s %8s\n", "rank",
                "expressions", "viol", "loss", "magnitude", "min p");
  out << line;
  for (size_t i = 0; i < verified.size(); ++i) {
    const auto& c = verified[i];
    double min_p = 1.0;
    for (const auto& v : c.verdicts) min_p = std::min(min_p, v.p_value);
    std::snprintf(line, sizeof(line), "%-5zu %-36s %5d %8.4f %9.3f %8.4f\n",
                  i + 1, ToString(c.exprs, sketch, t_arg).c_str(),
                  c.violations, c.loss, c.magnitude, min_p);
    out << line;
  }
  if (verified.empty()) out << "(no candidate survived verification)\n";
  return out.str();
}

SynthReport Synthesize(std::shared_ptr<const lang::MechanismSketch> sketch,
                       const SynthConfig& config) {
  auto started = Clock::now();
  SynthReport report;
  report.mechanism = sketch->name;
  report.config = config.ToJson();
  const int holes = sketch->num_holes();
  const std::string& t_arg = config.grammar.t_arg;

  tester::TesterOptions topt;
  topt.trials = config.trials;
  topt.threads = config.threads;

  std::shared_ptr<const lang::BoundProgram> program;
  double eps = 0.0;
  InPhase(Phase::kInit, &report.times.init, [&] {
    report.gamma = FixParams(*sketch, config.gamma);
    program = std::make_shared<const lang::BoundProgram>(sketch, report.gamma);
    eps = ToDouble(report.gamma.Epsilon(*sketch));
    search::SelectOptions sel;
    sel.scale_grid = config.scale_grid;
    sel.zone_low = config.zone_low;
    sel.zone_high = config.zone_high;
    sel.min_support = config.min_support;
    sel.tester = topt;
    sel.tester.seed = MixSeed(config.seed, 1);
    auto selection = search::SelectExamplesWithFallback(
        program, search::DirectionSet(holes), sel);
    report.examples = std::move(selection.examples);
    report.examples_widened = selection.widened;
    report.examples_unfiltered = selection.unfiltered;
    if (report.examples.empty()) {
      throw PhaseError(Phase::kInit, "no examples found");
    }
    return 0;
  });

  InPhase(Phase::kOpti, &report.times.opti, [&] {
    search::BankOptions bopt;
    bopt.presamples = config.presamples;
    bopt.proposal_scale = config.proposal_scale;
    bopt.seed = MixSeed(config.seed, 2);
    bopt.threads = config.threads;
    bopt.min_support = config.min_support;
    search::PresampleBank bank(program, report.examples, bopt);
    search::DeOptions de;
    de.population = config.population;
    de.steps = config.steps_per_hole * holes;
    de.seed = MixSeed(config.seed, 3);
    de.threads = config.threads;
    report.region = search::GetNoiseRegion(bank, eps, config.lambda, de);
    return 0;
  });

  std::vector<BindingContext> bindings;
  InPhase(Phase::kEnum, &report.times.enumerate, [&] {
    Grammar grammar(config.grammar);
    report.radius_used = config.radius;
    auto cands = EnumerateAndPrune(grammar, report.region, *sketch,
                                   report.gamma, config.radius);
    if (cands.empty()) {
      report.radius_used = config.fallback_radius;
      cands = EnumerateAndPrune(grammar, report.region, *sketch, report.gamma,
                                config.fallback_radius);
    }
    if (cands.empty()) {
      throw PhaseError(Phase::kEnum, "no grammar element near the region");
    }
    report.enumerated = cands.size();

    std::set<lang::HoleMask> mask_set;
    for (const auto& c : cands) {
      lang::HoleMask m = 0;
      for (int h = 0; h < holes; ++h) {
        if (c[h].bottom) m |= lang::HoleMask{1} << h;
      }
      mask_set.insert(m);
    }
    std::vector<lang::HoleMask> masks(mask_set.begin(), mask_set.end());

    const auto& best = report.region.members.front();
    uint64_t index = 0;
    for (const auto& point : config.test_points) {
      BindingContext ctx;
      ctx.binding = Rebind(*sketch, report.gamma, point);
      ctx.program =
          std::make_shared<const lang::BoundProgram>(sketch, ctx.binding);
      ctx.epsilon = ToDouble(point.epsilon);
      double rescale = eps / ctx.epsilon;
      auto examples =
          StretchExamples(report.examples, static_cast<size_t>(point.size));
      std::vector<std::optional<double>> scales;
      for (const auto& s : best.noise.scales()) {
        scales.push_back(s ? std::optional<double>(*s * rescale)
                           : std::nullopt);
      }
      lang::ConcreteMechanism probe(ctx.program, lang::NoiseVector(scales));
      tester::TesterOptions probe_opt = topt;
      probe_opt.seed = MixSeed(MixSeed(config.seed, 4), index);
      auto fresh = tester::TestMechanism(probe, ctx.epsilon, probe_opt);
      for (const auto& c : fresh.confirmed) {
        if (!search::WellSupported(c, config.min_support)) continue;
        search::AddUnique(&examples,
                          {c.d1, c.d2, c.event, {}, 0.0, c.p_at_target});
      }
      if (examples.empty()) {
        throw PhaseError(Phase::kEnum,
                         "no test examples at " + ctx.binding.ToString());
      }
      search::BankOptions bopt;
      bopt.presamples = config.presamples;
      bopt.proposal_scale = config.proposal_scale * rescale;
      bopt.component_scales =
          ProposalLadder(cands, *sketch, ctx.binding, bopt.proposal_scale,
                         t_arg);
      bopt.seed = MixSeed(MixSeed(config.seed, 5), index);
      bopt.threads = config.threads;
      bopt.min_support = config.min_support;
      bopt.masks = masks;
      ctx.bank = std::make_shared<const search::PresampleBank>(
          ctx.program, std::move(examples), bopt);
      bindings.push_back(std::move(ctx));
      ++index;
    }
    report.ranked = RankCandidates(cands, *sketch, report.gamma, bindings,
                                   config.slack, t_arg, config.threads);
    return 0;
  });

  InPhase(Phase::kVerify, &report.times.verify, [&] {
    size_t budget = static_cast<size_t>(config.verify_per_hole * holes);
    std::vector<RankedCandidate> top(
        report.ranked.begin(),
        report.ranked.begin() + std::min(budget, report.ranked.size()));
    tester::TesterOptions vopt = topt;
    vopt.seed = MixSeed(config.seed, 6);
    auto result = FinalVerify(std::move(top), *sketch, bindings, vopt,
                              config.reject_p, t_arg);
    report.verified = std::move(result.survivors);
    report.rejected = std::move(result.rejected);
    return 0;
  });
  report.times.total = Seconds(started);
  return report;
}

}  // namespace dpsynth::synth
