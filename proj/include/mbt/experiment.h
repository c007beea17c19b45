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

// Batch commands behind the mbt tool. Everything here is a pure function of
// the config and instance, so outputs are reproducible byte for byte.

#ifndef MBT_EXPERIMENT_H_
#define MBT_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbt/io.h"
#include "mbt/welfare.h"

namespace mbt {

enum class Command { kVerify, kEvaluate, kApprox, kSweep };

std::string_view ToString(Command command);
Command ParseCommand(std::string_view text);

enum class ReportFormat { kCsv, kJson };

struct ExperimentConfig {
  Command command = Command::kEvaluate;
  // Mechanism document (already read), or a rule name "det2" / "grqm".
  std::string mechanism;
  EvalMethod mode = EvalMethod::kExact;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  ReportFormat format = ReportFormat::kCsv;
  // sweep: prices to post (with the mechanism's S and tie policy, or the
  // unit schedule) or, when empty, `seed_count` consecutive seeds.
  std::vector<double> prices;
  int seed_count = 0;
};

struct CommandResult {
  std::string output;  // full file contents
  int exit_code = 0;
};

// Throws std::invalid_argument for unusable configs (for instance mc mode
// without a seed) and UnsupportedModeError for unsupported combinations.
CommandResult RunCommand(const ExperimentConfig& config,
                         const io::InstanceSpec& instance);

// "a:b:step" (inclusive, computed as a + i * step) or "x,y,z".
std::vector<double> ParsePriceGrid(std::string_view text);

}  // namespace mbt

#endif  // MBT_EXPERIMENT_H_
