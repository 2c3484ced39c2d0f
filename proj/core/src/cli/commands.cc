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

#include "dpsynth/cli/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <boost/program_options.hpp>

#include "dpsynth/common/rng.h"
#include "dpsynth/lang/errors.h"
#include "dpsynth/lang/parser.h"
#include "dpsynth/search/bank.h"
#include "dpsynth/search/examples.h"
#include "dpsynth/tester/tester.h"

namespace dpsynth::cli {
namespace po = boost::program_options;
namespace {

std::shared_ptr<const lang::MechanismSketch> Load(const std::string& path) {
  return std::make_shared<const lang::MechanismSketch>(lang::LoadSketch(path));
}

bool WriteFile(const std::string& path, const std::string& text,
               std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

std::vector<double> Lattice(double low, double high, double step) {
  if (!(step > 0.0) || high < low) {
    throw ContractError("grid range must satisfy low <= high and step > 0");
  }
  std::vector<double> out;
  for (int i = 0;; ++i) {
    double v = low + i * step;
    if (v > high + 1e-9) break;
    out.push_back(v);
  }
  return out;
}

}  // namespace

synth::SynthConfig RunConfig::Effective() const {
  synth::SynthConfig c = synth;
  if (paper_scale) {
    c.trials *= 5;
    c.presamples *= 5;
  }
  return c;
}

int CmdSynth(const std::string& sketch_path, const RunConfig& config,
             std::ostream& out, std::ostream& err) {
  try {
    auto sketch = Load(sketch_path);
    auto report = synth::Synthesize(sketch, config.Effective());
    std::string path = config.out;
    if (path.empty()) {
      path = std::filesystem::path(sketch_path).stem().string() +
             ".report.json";
    }
    if (!WriteFile(path, report.ToJson(*sketch).dump(2) + "\n", err) ||
        !WriteFile(path + ".timings.json",
                   report.times.ToJson().dump(2) + "\n", err)) {
      return kUsage;
    }
    out << report.SummaryTable(*sketch);
    return report.verified.empty() ? kFinding : kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int CmdTest(const std::string& sketch_path, const std::string& noise,
            double epsilon0, const RunConfig& config, std::ostream& out,
            std::ostream& err) {
  try {
    auto sketch = Load(sketch_path);
    auto effective = config.Effective();
    auto gamma = synth::FixParams(*sketch, effective.gamma);
    gamma.Set(sketch->EpsilonArg().name,
              Rational(static_cast<int64_t>(std::llround(epsilon0 * 1e6)),
                       1000000));
    auto program = std::make_shared<const lang::BoundProgram>(sketch, gamma);
    lang::ConcreteMechanism mech(program, lang::NoiseVector::Parse(noise));
    tester::TesterOptions opt;
    opt.trials = effective.trials;
    opt.seed = effective.seed;
    opt.threads = effective.threads;
    auto report = tester::TestMechanism(mech, epsilon0, opt);
    std::string lines;
    for (const auto& r : report.Records()) lines += r.ToJson().dump() + "\n";
    out << lines;
    if (!config.out.empty() && !WriteFile(config.out, lines, err)) {
      return kUsage;
    }
    auto best = report.Best();
    return best && best->p_value < 0.05 ? kFinding : kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int CmdGrid(const std::string& sketch_path, const GridSpec& grid,
            const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    auto sketch = Load(sketch_path);
    const int holes = sketch->num_holes();
    if (grid.hole_a < 0 || grid.hole_a >= holes || grid.hole_b < 0 ||
        grid.hole_b >= holes || grid.hole_a == grid.hole_b) {
      err << "error: grid holes must be two distinct holes in 1.." << holes
          << "\n";
      return kUsage;
    }
    auto values = Lattice(grid.low, grid.high, grid.step);
    std::vector<std::optional<double>> base(holes);
    if (!grid.base.empty()) {
      auto parsed = lang::NoiseVector::Parse(grid.base);
      if (static_cast<int>(parsed.size()) != holes) {
        err << "error: base assignment needs " << holes << " entries\n";
        return kUsage;
      }
      base = parsed.scales();
    }
    auto effective = config.Effective();
    auto gamma = synth::FixParams(*sketch, effective.gamma);
    auto program = std::make_shared<const lang::BoundProgram>(sketch, gamma);
    double eps = ToDouble(gamma.Epsilon(*sketch));
    search::SelectOptions sel;
    sel.scale_grid = effective.scale_grid;
    sel.zone_low = effective.zone_low;
    sel.zone_high = effective.zone_high;
    sel.min_support = effective.min_support;
    sel.tester.trials = effective.trials;
    sel.tester.threads = effective.threads;
    sel.tester.seed = MixSeed(effective.seed, 1);
    auto selection = search::SelectExamplesWithFallback(
        program, search::DirectionSet(holes), sel);
    search::BankOptions bopt;
    bopt.presamples = effective.presamples;
    bopt.proposal_scale = effective.proposal_scale;
    bopt.seed = MixSeed(effective.seed, 2);
    bopt.threads = effective.threads;
    bopt.min_support = effective.min_support;
    search::PresampleBank bank(program, selection.examples, bopt);
    out << "scale" << grid.hole_a + 1 << ",scale" << grid.hole_b + 1
        << ",objective,log_objective\n";
    for (double a : values) {
      for (double b : values) {
        auto scales = base;
        scales[grid.hole_a] = a;
        scales[grid.hole_b] = b;
        lang::NoiseVector c(scales);
        out << a << "," << b << ","
            << search::Objective(bank, c, eps, effective.lambda) << ","
            << search::LogObjective(bank, c, eps, effective.lambda) << "\n";
      }
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int Main(int argc, const char* const argv[], std::ostream& out,
         std::ostream& err) {
  const std::string usage =
      "usage: dpsynth <synth|test|grid> --sketch FILE [options]\n";
  if (argc < 2) {
    err << usage;
    return kUsage;
  }
  std::string command = argv[1];
  if (command == "-h" || command == "--help") {
    out << usage;
    return kOk;
  }
  if (command != "synth" && command != "test" && command != "grid") {
    err << "error: unknown command '" << command << "'\n" << usage;
    return kUsage;
  }

  RunConfig config;
  auto& s = config.synth;
  std::string sketch_path, noise, holes = "1,2", range = "1:12:1", base;
  std::vector<std::string> sets;
  double epsilon = 0.5;
  bool t_exponents = false;
  po::options_description opts("options");
  opts.add_options()
      ("help,h", "show this help")
      ("sketch", po::value(&sketch_path), "sketch file (.dpm)")
      ("epsilon", po::value(&epsilon), "target epsilon for test")
      ("noise", po::value(&noise), "scales per hole for test, e.g. 4,bot")
      ("seed", po::value(&s.seed), "random seed")
      ("threads", po::value(&s.threads), "worker threads (0 = all cores)")
      ("trials", po::value(&s.trials), "tester runs per input")
      ("presamples", po::value(&s.presamples), "presampled traces")
      ("lambda", po::value(&s.lambda), "sparsity weight")
      ("population", po::value(&s.population), "evolution population")
      ("steps", po::value(&s.steps_per_hole), "generations per hole")
      ("radius", po::value(&s.radius), "pruning radius")
      ("proposal", po::value(&s.proposal_scale), "proposal scale")
      ("set", po::value(&sets)->composing(),
       "argument override NAME=VALUE (repeatable)")
      ("t-exponents", po::bool_switch(&t_exponents),
       "allow T^0..1 in expressions")
      ("holes", po::value(&holes), "grid holes, 1-based, e.g. 1,2")
      ("grid", po::value(&range), "grid range LOW:HIGH:STEP")
      ("base", po::value(&base), "grid scales for the other holes")
      ("out", po::value(&config.out), "output path")
      ("paper-scale", po::bool_switch(&config.paper_scale),
       "five times the trials and presamples");
  po::positional_options_description pos;
  pos.add("sketch", 1);
  po::variables_map vm;
  try {
    po::store(po::command_line_parser(argc - 1, argv + 1)
                  .options(opts)
                  .positional(pos)
                  .run(),
              vm);
    po::notify(vm);
    if (vm.count("help")) {
      out << usage << opts;
      return kOk;
    }
    if (sketch_path.empty()) throw po::error("--sketch is required");
    for (const auto& kv : sets) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw po::error("--set needs NAME=VALUE");
      s.gamma[kv.substr(0, eq)] = ParseRational(kv.substr(eq + 1));
    }
    if (t_exponents) s.grammar.t_exp_max = 1;
    if (s.trials <= 0 || s.presamples <= 0 || s.population < 4 ||
        s.steps_per_hole < 1 || !(s.radius > 0) || !(s.lambda >= 0) ||
        !(s.proposal_scale > 0)) {
      throw po::error("numeric options must be positive");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n" << usage;
    return kUsage;
  }

  if (command == "synth") return CmdSynth(sketch_path, config, out, err);
  if (command == "test") {
    if (noise.empty()) {
      err << "error: test needs --noise\n";
      return kUsage;
    }
    return CmdTest(sketch_path, noise, epsilon, config, out, err);
  }
  GridSpec grid;
  grid.base = base;
  try {
    auto comma = holes.find(',');
    if (comma == std::string::npos) throw ContractError("--holes needs A,B");
    grid.hole_a = std::stoi(holes.substr(0, comma)) - 1;
    grid.hole_b = std::stoi(holes.substr(comma + 1)) - 1;
    auto c1 = range.find(':');
    auto c2 = range.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ContractError("--grid needs LOW:HIGH:STEP");
    }
    grid.low = std::stod(range.substr(0, c1));
    grid.high = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    grid.step = std::stod(range.substr(c2 + 1));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return CmdGrid(sketch_path, grid, config, out, err);
}

}  // namespace dpsynth::cli
