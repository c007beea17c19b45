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

// JSON documents for valuations, priors, mechanisms, violations and
// instances; CSV rows for welfare reports.

#ifndef MBT_IO_H_
#define MBT_IO_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mbt/mechanism.h"
#include "mbt/prior.h"
#include "mbt/verify.h"
#include "mbt/welfare.h"

namespace mbt::io {

using Json = nlohmann::ordered_json;

// Malformed document. what() starts with a JSON path such as
// "$.buyer.support[0].values".
class SchemaError : public std::invalid_argument {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Shortest decimal that round-trips; "inf", "-inf" and "nan" otherwise.
std::string FormatNumber(double x);

Json ToJson(const Valuation& v);
Valuation ValuationFromJson(const Json& j, const std::string& path = "$");

Json ToJson(const BaseDistribution& base);
BaseDistribution BaseFromJson(const Json& j, const std::string& path = "$");

Json ToJson(const Prior& prior);
// `cls` applies to discrete supports; `role` is the side the prior describes
// and must match a sorted-iid "role" field when present. k <= 0 skips the
// k check.
Prior PriorFromJson(const Json& j, ValuationClass cls, Role role, int k,
                    const std::string& path = "$");

Json ToJson(const FixedPriceMechanism& m);
// Explicit tie policies have no document form and are rejected.
FixedPriceMechanism MechanismFromJson(const Json& j,
                                      const std::string& path = "$");

Json ToJson(const Schedule& schedule);
Schedule ScheduleFromJson(const Json& j, const std::string& path = "$");

Json ToJson(const Violation& violation);
// One line, no trailing newline.
std::string ViolationLine(const Violation& violation);

struct InstanceSpec {
  std::string id;
  int k = 0;
  ValuationClass cls = ValuationClass::kIncreasingSubmodular;
  Prior buyer;
  Prior seller;
};

Json ToJson(const InstanceSpec& instance);
InstanceSpec ParseInstance(std::string_view text);
InstanceSpec InstanceFromJson(const Json& j);

Json ToJson(const WelfareReport& report);

// Fixed CSV header, without the trailing newline.
inline constexpr std::string_view kReportCsvHeader =
    "instance_id,mechanism,opt,sw,ratio,method,trials,stderr";

// Quotes a CSV field when it contains a comma, quote or newline.
std::string CsvField(std::string_view text);
// One row matching kReportCsvHeader; "stderr" carries the welfare standard
// error (0 outside Monte Carlo).
std::string ReportCsvRow(std::string_view instance_id,
                         std::string_view mechanism,
                         const WelfareReport& report);

std::string ReadFile(const std::string& path);
// Throws std::runtime_error naming the path on failure.
void WriteFile(const std::string& path, std::string_view content);

}  // namespace mbt::io

#endif  // MBT_IO_H_
