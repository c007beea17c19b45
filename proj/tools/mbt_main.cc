// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mbt: batch runner for fixed price mechanisms.
//
//   mbt verify   --instance inst.json --mechanism mech.json
//   mbt evaluate --instance inst.json --mechanism mech.json --mode exact
//   mbt approx   --instance inst.json --mechanism det2 --mode mc --seed 7
//   mbt sweep    --instance inst.json --prices 0:10:1

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mbt/experiment.h"
#include "mbt/io.h"
#include "mbt/pricing.h"

namespace {

struct Flags {
  std::string instance;
  std::string mechanism;
  std::string mode = "exact";
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<double> tol;
  std::string format = "csv";
  std::string prices;
  int seeds = 0;
};

void AddCommon(CLI::App* cmd, Flags& flags, bool sweep) {
  cmd->add_option("--instance", flags.instance, "Instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--mechanism", flags.mechanism,
                  "Mechanism JSON file, or the rule det2 / grqm");
  cmd->add_option("--mode", flags.mode, "exact | quadrature | mc")
      ->check(CLI::IsMember({"exact", "quadrature", "mc"}));
  cmd->add_option("--trials", flags.trials, "Monte Carlo trials");
  cmd->add_option("--seed", flags.seed, "64-bit seed (required for mc)");
  cmd->add_option("--out", flags.out, "Output file (default stdout)");
  cmd->add_option("--tol", flags.tol, "Threshold-mass tolerance");
  cmd->add_option("--format", flags.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  if (sweep) {
    cmd->add_option("--prices", flags.prices, "lo:hi:step or p1,p2,...");
    cmd->add_option("--seeds", flags.seeds,
                    "Number of consecutive seeds starting at --seed");
  }
}

mbt::ExperimentConfig ToConfig(const std::string& command, const Flags& f) {
  mbt::ExperimentConfig config;
  config.command = mbt::ParseCommand(command);
  if (f.mechanism == "det2" || f.mechanism == "grqm" || f.mechanism.empty()) {
    config.mechanism = f.mechanism;
  } else {
    config.mechanism = mbt::io::ReadFile(f.mechanism);
  }
  config.mode = mbt::ParseEvalMethod(f.mode);
  config.trials = f.trials;
  config.seed = f.seed;
  config.tol = f.tol;
  config.format =
      f.format == "json" ? mbt::ReportFormat::kJson : mbt::ReportFormat::kCsv;
  if (!f.prices.empty()) config.prices = mbt::ParsePriceGrid(f.prices);
  config.seed_count = f.seeds;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed price mechanisms for multi-unit bilateral trade"};
  app.require_subcommand(1);
  Flags flags;
  for (const char* name : {"verify", "evaluate", "approx", "sweep"}) {
    CLI::App* cmd = app.add_subcommand(name);
    AddCommon(cmd, flags, std::string(name) == "sweep");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const mbt::ExperimentConfig config = ToConfig(command, flags);
    const mbt::io::InstanceSpec instance =
        mbt::io::ParseInstance(mbt::io::ReadFile(flags.instance));
    const mbt::CommandResult result = mbt::RunCommand(config, instance);
    if (flags.out.empty()) {
      std::cout << result.output;
    } else {
      mbt::io::WriteFile(flags.out, result.output);
    }
    return result.exit_code;
  } catch (const mbt::PriceSolverError& e) {
    mbt::io::Json diag = mbt::io::Json::object();
    diag["error"] = e.what();
    const auto& d = e.diagnostics();
    diag["diagnostics"] = {{"target_mass", d.target_mass}, {"lo", d.lo},
                           {"hi", d.hi},           {"mass_lo", d.mass_lo},
                           {"mass_hi", d.mass_hi}, {"iterations", d.iterations}};
    std::cerr << diag.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
