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

#include "mbt/experiment.h"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

namespace mbt {
namespace {

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> Split(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

io::InstanceSpec UniformInstance() {
  return io::ParseInstance(R"({
    "id": "u10", "k": 4,
    "buyer": {"kind": "discrete", "support": [{"values": [0, 9, 16, 21, 24], "prob": 1}]},
    "seller": {"kind": "sorted_iid", "base": {"uniform": [0, 10]}}
  })");
}

io::InstanceSpec IncreasingInstance() {
  return io::ParseInstance(R"({
    "id": "inc", "k": 3, "class": "increasing",
    "buyer": {"kind": "discrete", "support": [{"values": [0, 1, 5, 6], "prob": 1}]},
    "seller": {"kind": "discrete", "support": [{"values": [0, 3, 5, 6], "prob": 1}]}
  })");
}

ExperimentConfig Mc(Command command, std::string mechanism) {
  ExperimentConfig c;
  c.command = command;
  c.mechanism = std::move(mechanism);
  c.mode = EvalMethod::kMonteCarlo;
  c.trials = 100000;
  c.seed = 7;
  return c;
}

TEST(ExperimentTest, ApproxDet2WithinFactorTwo) {
  const CommandResult r = RunCommand(Mc(Command::kApprox, "det2"), UniformInstance());
  EXPECT_EQ(r.exit_code, 0);
  const auto lines = Lines(r.output);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], io::kReportCsvHeader);
  const auto cells = Split(lines[1]);
  ASSERT_EQ(cells.size(), 8u);
  EXPECT_EQ(cells[0], "u10");
  EXPECT_EQ(cells[1], "det2(p=5)");
  EXPECT_EQ(cells[5], "monte_carlo");
  EXPECT_EQ(cells[6], "100000");
  EXPECT_LE(std::stod(cells[4]), 2.02);
}

TEST(ExperimentTest, ApproxRejectsDocuments) {
  ExperimentConfig c = Mc(Command::kApprox, R"({"p":1,"S":[1,2,3,4],"k":4})");
  EXPECT_THROW(RunCommand(c, UniformInstance()), std::invalid_argument);
}

TEST(ExperimentTest, McNeedsSeed) {
  ExperimentConfig c = Mc(Command::kEvaluate, "grqm");
  c.seed.reset();
  EXPECT_THROW(RunCommand(c, UniformInstance()), std::invalid_argument);
}

TEST(ExperimentTest, QuadratureJsonReport) {
  ExperimentConfig c;
  c.command = Command::kApprox;
  c.mechanism = "grqm";
  c.mode = EvalMethod::kQuadrature;
  c.format = ReportFormat::kJson;
  const io::Json j = io::Json::parse(RunCommand(c, UniformInstance()).output);
  EXPECT_EQ(j["instance_id"], "u10");
  EXPECT_EQ(j["mechanism"], "grqm");
  EXPECT_EQ(j["report"]["method"], "quadrature");
  EXPECT_LE(j["report"]["ratio"].get<double>(), 1.5821);
}

TEST(ExperimentTest, VerifyFindsWitnessForBundles) {
  ExperimentConfig c;
  c.command = Command::kVerify;
  c.mechanism = R"({"p":2,"S":[2,3],"k":3})";
  const CommandResult r = RunCommand(c, IncreasingInstance());
  EXPECT_EQ(r.exit_code, 1);
  const auto lines = Lines(r.output);
  ASSERT_GE(lines.size(), 1u);
  for (const std::string& line : lines) {
    const io::Json j = io::Json::parse(line);
    EXPECT_TRUE(j["kind"] != "SBB") << line;
    EXPECT_GT(j["delta"].get<double>(), 0);
  }
}

TEST(ExperimentTest, VerifyCleanUnitScheduleOnSubmodular) {
  ExperimentConfig c;
  c.command = Command::kVerify;
  c.mechanism = R"({"p":2,"S":[1,2,3],"k":3})";
  io::InstanceSpec inst = io::ParseInstance(R"({
    "k": 3,
    "buyer": {"kind": "discrete", "support": [{"values": [0, 5, 8, 9], "prob": 0.5},
                                             {"values": [0, 1, 2, 2.5], "prob": 0.5}]},
    "seller": {"kind": "discrete", "support": [{"values": [0, 3, 5, 6], "prob": 1}]}
  })");
  const CommandResult r = RunCommand(c, inst);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "");
}

// Point masses: the traded quantity never exceeds the efficient one and
// rises then falls in p, so welfare does too.
TEST(ExperimentTest, PriceSweepIsUnimodal) {
  ExperimentConfig c = Mc(Command::kSweep, "");
  c.mode = EvalMethod::kExact;
  c.prices = ParsePriceGrid("0:10:1");
  const io::InstanceSpec inst = io::ParseInstance(R"({
    "k": 4,
    "buyer": {"kind": "discrete", "support": [{"values": [0, 9, 16, 21, 24], "prob": 1}]},
    "seller": {"kind": "discrete", "support": [{"values": [0, 6, 11, 15, 17], "prob": 1}]}
  })");
  const auto lines = Lines(RunCommand(c, inst).output);
  ASSERT_EQ(lines.size(), 12u);
  std::vector<double> sw;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    sw.push_back(std::stod(Split(lines[i])[3]));
  }
  std::size_t peak = 0;
  for (std::size_t i = 1; i < sw.size(); ++i) {
    if (sw[i] > sw[peak]) peak = i;
  }
  for (std::size_t i = 0; i < peak; ++i) EXPECT_LE(sw[i], sw[i + 1]);
  for (std::size_t i = peak; i + 1 < sw.size(); ++i) EXPECT_GE(sw[i], sw[i + 1]);
}

TEST(ExperimentTest, SeedSweepLabels) {
  ExperimentConfig c = Mc(Command::kSweep, "grqm");
  c.trials = 1000;
  c.seed_count = 3;
  const auto lines = Lines(RunCommand(c, UniformInstance()).output);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(Split(lines[3])[1], "grqm@seed=9");
  c.mechanism = "grqm";
  c.prices = {1, 2};
  EXPECT_THROW(RunCommand(c, UniformInstance()), std::invalid_argument);
}

TEST(ExperimentTest, Deterministic) {
  for (const ExperimentConfig& c :
       {Mc(Command::kApprox, "grqm"), Mc(Command::kEvaluate, "det2")}) {
    EXPECT_EQ(RunCommand(c, UniformInstance()).output,
              RunCommand(c, UniformInstance()).output);
  }
}

TEST(ParsePriceGridTest, Forms) {
  EXPECT_EQ(ParsePriceGrid("0:1:0.5"), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(ParsePriceGrid("0:1:0.1").size(), 11u);
  EXPECT_EQ(ParsePriceGrid("1,2.5,4"), (std::vector<double>{1, 2.5, 4}));
  EXPECT_THROW(ParsePriceGrid("1:0:1"), std::invalid_argument);
  EXPECT_THROW(ParsePriceGrid("1:2"), std::invalid_argument);
  EXPECT_THROW(ParsePriceGrid("a,b"), std::invalid_argument);
  EXPECT_EQ(ParseCommand("sweep"), Command::kSweep);
}

}  // namespace
}  // namespace mbt
