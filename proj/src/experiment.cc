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

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "mbt/pricing.h"
#include "mbt/verify.h"

namespace mbt {

std::string_view ToString(Command command) {
  switch (command) {
    case Command::kVerify:
      return "verify";
    case Command::kEvaluate:
      return "evaluate";
    case Command::kApprox:
      return "approx";
    case Command::kSweep:
      return "sweep";
  }
  return {};
}

Command ParseCommand(std::string_view text) {
  if (text == "verify") return Command::kVerify;
  if (text == "evaluate") return Command::kEvaluate;
  if (text == "approx") return Command::kApprox;
  if (text == "sweep") return Command::kSweep;
  throw std::invalid_argument("unknown command '" + std::string(text) + "'");
}

namespace {

double ParseDouble(std::string_view text) {
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return x;
}

bool IsRule(std::string_view name) { return name == "det2" || name == "grqm"; }

struct ResolvedMechanism {
  EvaluatedMechanism mechanism;
  std::string label;
  std::optional<PriceSolution> price;
};

ResolvedMechanism Resolve(const ExperimentConfig& config,
                          const io::InstanceSpec& instance) {
  if (config.mechanism == "grqm") {
    return {GrqmRule{instance.seller}, "grqm", std::nullopt};
  }
  if (config.mechanism == "det2") {
    const int k = instance.k;
    const PriceSolution solution = SolveThresholdPrice(
        instance.seller, k / 2.0, config.tol.value_or(kDefaultMassTolerance));
    if (!std::isfinite(solution.p)) {
      throw std::invalid_argument("det2 price is unbounded");
    }
    FixedPriceMechanism m = FixedPriceMechanism::UnitSchedule(solution.p, k);
    return {m, "det2(p=" + io::FormatNumber(solution.p) + ")", solution};
  }
  if (config.mechanism.empty()) {
    throw std::invalid_argument("--mechanism is required");
  }
  io::Json doc;
  try {
    doc = io::Json::parse(config.mechanism);
  } catch (const io::Json::parse_error& e) {
    throw io::SchemaError("$", std::string("malformed mechanism JSON: ") +
                                   e.what());
  }
  FixedPriceMechanism m = io::MechanismFromJson(doc);
  if (m.k() != instance.k) {
    throw io::SchemaError("$.k", "mechanism k = " + std::to_string(m.k()) +
                                     " but instance k = " +
                                     std::to_string(instance.k));
  }
  EvaluatedMechanism mech = m;
  return {mech, MechanismLabel(mech), std::nullopt};
}

EvaluationMode ModeOf(const ExperimentConfig& config) {
  switch (config.mode) {
    case EvalMethod::kExact:
      return EvaluationMode::Exact();
    case EvalMethod::kQuadrature:
      return EvaluationMode::Quadrature();
    case EvalMethod::kMonteCarlo: {
      if (!config.seed) {
        throw std::invalid_argument("mc mode needs an explicit --seed");
      }
      const std::int64_t trials = config.trials.value_or(100000);
      if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
      return EvaluationMode::MonteCarlo(trials, *config.seed);
    }
  }
  return {};
}

struct Row {
  std::string mechanism;
  WelfareReport report;
  std::optional<PriceSolution> price;
};

io::Json RowJson(const io::InstanceSpec& instance, const Row& row) {
  io::Json out = io::Json::object();
  out["instance_id"] = instance.id;
  out["mechanism"] = row.mechanism;
  out["report"] = io::ToJson(row.report);
  if (row.price) {
    io::Json price = io::Json::object();
    price["p"] = row.price->p;
    price["achieved_mass"] = row.price->achieved_mass;
    price["target_mass"] = row.price->target_mass;
    price["method"] = std::string(ToString(row.price->method));
    price["iterations"] = row.price->iterations;
    out["price"] = price;
  }
  return out;
}

std::string Render(const ExperimentConfig& config,
                   const io::InstanceSpec& instance,
                   const std::vector<Row>& rows) {
  if (config.format == ReportFormat::kJson) {
    if (rows.size() == 1 && config.command != Command::kSweep) {
      return RowJson(instance, rows.front()).dump(2) + "\n";
    }
    io::Json all = io::Json::array();
    for (const Row& row : rows) all.push_back(RowJson(instance, row));
    return all.dump(2) + "\n";
  }
  std::string out(io::kReportCsvHeader);
  out += "\n";
  for (const Row& row : rows) {
    out += io::ReportCsvRow(instance.id, row.mechanism, row.report);
    out += "\n";
  }
  return out;
}

CommandResult RunVerify(const ExperimentConfig& config,
                        const io::InstanceSpec& instance) {
  if (config.mechanism == "grqm") {
    throw std::invalid_argument(
        "verify takes a fixed price mechanism; grqm is a distribution over "
        "them");
  }
  const ResolvedMechanism resolved = Resolve(config, instance);
  const auto& m = std::get<FixedPriceMechanism>(resolved.mechanism);
  const MechanismUnderTest mut =
      MechanismUnderTest::FromFixedPrice(m, instance.cls);
  std::vector<Violation> found;
  const auto* buyers = std::get_if<DiscretePrior>(&instance.buyer);
  const auto* sellers = std::get_if<DiscretePrior>(&instance.seller);
  if (buyers != nullptr && sellers != nullptr) {
    std::vector<Valuation> vs;
    std::vector<Valuation> ws;
    for (const Atom& a : buyers->support()) vs.push_back(a.valuation);
    for (const Atom& a : sellers->support()) ws.push_back(a.valuation);
    const std::vector<Profile> profiles = CrossProfiles(vs, ws);
    for (Violation& v : CheckIrSbb(mut, profiles)) found.push_back(std::move(v));
    for (Violation& v : CheckDsic(mut, vs, ws)) found.push_back(std::move(v));
  }
  if (auto witness = SearchCounterexample(m, instance.cls)) {
    found.push_back(std::move(*witness));
  }
  CommandResult result;
  for (const Violation& v : found) {
    result.output += io::ViolationLine(v);
    result.output += "\n";
  }
  result.exit_code = found.empty() ? 0 : 1;
  return result;
}

CommandResult RunSweep(const ExperimentConfig& config,
                       const io::InstanceSpec& instance) {
  const EvaluationMode mode = ModeOf(config);
  std::vector<Row> rows;
  if (!config.prices.empty()) {
    if (IsRule(config.mechanism)) {
      throw std::invalid_argument(
          "a price sweep takes S and tie policy from a mechanism document, "
          "not from a rule");
    }
    QuantitySet tradeable;
    TieBreaking tie = TieBreaking::FavorHighest();
    if (config.mechanism.empty()) {
      for (Quantity q = 1; q <= instance.k; ++q) tradeable.push_back(q);
    } else {
      const auto& base =
          std::get<FixedPriceMechanism>(Resolve(config, instance).mechanism);
      tradeable = base.tradeable();
      tie = base.tie();
    }
    for (double p : config.prices) {
      EvaluatedMechanism mech = FixedPriceMechanism(p, tradeable, instance.k, tie);
      rows.push_back({MechanismLabel(mech),
                      Evaluate(mech, instance.buyer, instance.seller, mode),
                      std::nullopt});
    }
    return {Render(config, instance, rows), 0};
  }
  if (config.seed_count < 1) {
    throw std::invalid_argument("sweep needs --prices or --seeds N");
  }
  if (mode.method != EvalMethod::kMonteCarlo) {
    throw std::invalid_argument("a seed sweep needs mc mode");
  }
  const ResolvedMechanism resolved = Resolve(config, instance);
  for (int i = 0; i < config.seed_count; ++i) {
    EvaluationMode m = mode;
    m.seed = mode.seed + static_cast<std::uint64_t>(i);
    rows.push_back({resolved.label + "@seed=" + std::to_string(m.seed),
                    Evaluate(resolved.mechanism, instance.buyer,
                             instance.seller, m),
                    resolved.price});
  }
  return {Render(config, instance, rows), 0};
}

}  // namespace

std::vector<double> ParsePriceGrid(std::string_view text) {
  std::vector<double> prices;
  if (text.find(':') != std::string_view::npos) {
    const std::size_t first = text.find(':');
    const std::size_t second = text.find(':', first + 1);
    if (second == std::string_view::npos) {
      throw std::invalid_argument("price range must be lo:hi:step");
    }
    const double lo = ParseDouble(text.substr(0, first));
    const double hi = ParseDouble(text.substr(first + 1, second - first - 1));
    const double step = ParseDouble(text.substr(second + 1));
    if (!(step > 0.0) || hi < lo) {
      throw std::invalid_argument("price range needs lo <= hi and step > 0");
    }
    // Small slack so that 0:1:0.1 includes 1.
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    if (count > 1000000) throw std::invalid_argument("price range too long");
    for (long i = 0; i <= count; ++i) prices.push_back(lo + i * step);
    return prices;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    prices.push_back(ParseDouble(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return prices;
}

CommandResult RunCommand(const ExperimentConfig& config,
                         const io::InstanceSpec& instance) {
  switch (config.command) {
    case Command::kVerify:
      return RunVerify(config, instance);
    case Command::kSweep:
      return RunSweep(config, instance);
    case Command::kApprox:
      if (!IsRule(config.mechanism)) {
        throw std::invalid_argument("approx takes --mechanism det2 or grqm");
      }
      [[fallthrough]];
    case Command::kEvaluate: {
      const EvaluationMode mode = ModeOf(config);
      const ResolvedMechanism resolved = Resolve(config, instance);
      std::vector<Row> rows{{resolved.label,
                             Evaluate(resolved.mechanism, instance.buyer,
                                      instance.seller, mode),
                             resolved.price}};
      return {Render(config, instance, rows), 0};
    }
  }
  return {};
}

}  // namespace mbt
