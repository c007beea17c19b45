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

#include "mbt/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mbt::io {

std::string FormatNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string Field(const std::string& path, std::string_view name) {
  return path + "." + std::string(name);
}

const Json& Require(const Json& j, std::string_view name,
                    const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  const auto it = j.find(name);
  if (it == j.end()) {
    throw SchemaError(Field(path, name), "missing field");
  }
  return *it;
}

double Number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

int Integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

std::string String(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

// Runs `parse` and re-throws plain invalid_argument errors under `path`.
template <typename F>
auto AtPath(const std::string& path, F&& parse) {
  try {
    return parse();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

Json NumberArray(std::span<const double> xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(x);
  return out;
}

}  // namespace

Json ToJson(const Valuation& v) { return NumberArray(v.values()); }

Valuation ValuationFromJson(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<Money> values;
  for (std::size_t i = 0; i < j.size(); ++i) {
    values.push_back(Number(j[i], Index(path, i)));
  }
  return AtPath(path, [&] { return Valuation(std::move(values)); });
}

Json ToJson(const BaseDistribution& base) {
  Json out = Json::object();
  switch (base.kind()) {
    case BaseDistribution::Kind::kUniform:
      out["uniform"] = Json::array(
          {base.knots().front().first, base.knots().back().first});
      break;
    case BaseDistribution::Kind::kExponential:
      out["exponential"] = base.rate();
      break;
    case BaseDistribution::Kind::kPiecewiseLinear: {
      Json knots = Json::array();
      for (const auto& [x, f] : base.knots()) {
        knots.push_back(Json::array({x, f}));
      }
      out["piecewise_linear"] = knots;
      break;
    }
  }
  return out;
}

BaseDistribution BaseFromJson(const Json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) {
    throw SchemaError(path,
                      "expected one of {\"uniform\":[a,b]}, "
                      "{\"exponential\":rate}, {\"piecewise_linear\":[[x,F],...]}");
  }
  const auto& [name, body] = *j.items().begin();
  const std::string where = Field(path, name);
  if (name == "uniform") {
    if (!body.is_array() || body.size() != 2) {
      throw SchemaError(where, "expected [lo, hi]");
    }
    const double lo = Number(body[0], Index(where, 0));
    const double hi = Number(body[1], Index(where, 1));
    return AtPath(where, [&] { return BaseDistribution::Uniform(lo, hi); });
  }
  if (name == "exponential") {
    const double rate = Number(body, where);
    return AtPath(where, [&] { return BaseDistribution::Exponential(rate); });
  }
  if (name == "piecewise_linear") {
    if (!body.is_array()) throw SchemaError(where, "expected [[x, F], ...]");
    std::vector<std::pair<double, double>> knots;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const std::string at = Index(where, i);
      if (!body[i].is_array() || body[i].size() != 2) {
        throw SchemaError(at, "expected [x, F]");
      }
      knots.emplace_back(Number(body[i][0], Index(at, 0)),
                         Number(body[i][1], Index(at, 1)));
    }
    return AtPath(where, [&] {
      return BaseDistribution::PiecewiseLinear(std::move(knots));
    });
  }
  throw SchemaError(where, "unknown base distribution");
}

Json ToJson(const Prior& prior) {
  Json out = Json::object();
  if (const auto* d = std::get_if<DiscretePrior>(&prior)) {
    out["kind"] = "discrete";
    Json support = Json::array();
    for (const Atom& atom : d->support()) {
      Json member = Json::object();
      member["values"] = ToJson(atom.valuation);
      member["prob"] = atom.prob;
      support.push_back(member);
    }
    out["support"] = support;
    return out;
  }
  const auto& s = std::get<SortedIidPrior>(prior);
  out["kind"] = "sorted_iid";
  out["base"] = ToJson(s.base);
  out["k"] = s.k;
  out["role"] = std::string(ToString(s.role));
  return out;
}

Prior PriorFromJson(const Json& j, ValuationClass cls, Role role, int k,
                    const std::string& path) {
  const std::string kind = String(Require(j, "kind", path), Field(path, "kind"));
  if (kind == "discrete") {
    const std::string where = Field(path, "support");
    const Json& support = Require(j, "support", path);
    if (!support.is_array() || support.empty()) {
      throw SchemaError(where, "expected a non-empty array");
    }
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < support.size(); ++i) {
      const std::string at = Index(where, i);
      const std::string values_path = Field(at, "values");
      Valuation v = ValuationFromJson(Require(support[i], "values", at),
                                      values_path);
      if (k > 0 && v.k() != k) {
        throw SchemaError(values_path, "has k = " + std::to_string(v.k()) +
                                           ", instance k = " +
                                           std::to_string(k));
      }
      if (auto bad = FirstClassViolation(v, cls)) {
        throw SchemaError(values_path, "class mismatch: not " +
                                           std::string(ToString(cls)) +
                                           " (breaks at index " +
                                           std::to_string(*bad) + ")");
      }
      const double prob =
          Number(Require(support[i], "prob", at), Field(at, "prob"));
      atoms.push_back(Atom{std::move(v), prob});
    }
    return AtPath(where, [&] { return Prior(DiscretePrior(std::move(atoms), cls)); });
  }
  if (kind == "sorted_iid") {
    BaseDistribution base =
        BaseFromJson(Require(j, "base", path), Field(path, "base"));
    int prior_k = k;
    if (j.contains("k")) {
      prior_k = Integer(j["k"], Field(path, "k"));
      if (k > 0 && prior_k != k) {
        throw SchemaError(Field(path, "k"),
                          "does not match instance k = " + std::to_string(k));
      }
    } else if (k <= 0) {
      throw SchemaError(Field(path, "k"), "missing field");
    }
    Role prior_role = role;
    if (j.contains("role")) {
      const std::string where = Field(path, "role");
      prior_role = AtPath(where, [&] { return ParseRole(String(j["role"], where)); });
      if (prior_role != role) {
        throw SchemaError(where, "expected role " + std::string(ToString(role)));
      }
    }
    return AtPath(path, [&] {
      return Prior(SortedIidPrior(prior_k, std::move(base), prior_role));
    });
  }
  throw SchemaError(Field(path, "kind"),
                    "unknown prior kind '" + kind + "'");
}

Json ToJson(const FixedPriceMechanism& m) {
  Json out = Json::object();
  out["p"] = m.price();
  Json s = Json::array();
  for (Quantity q : m.tradeable()) s.push_back(q);
  out["S"] = s;
  out["tie"] = std::string(ToString(m.tie().policy()));
  out["k"] = m.k();
  return out;
}

FixedPriceMechanism MechanismFromJson(const Json& j, const std::string& path) {
  const double p = Number(Require(j, "p", path), Field(path, "p"));
  const int k = Integer(Require(j, "k", path), Field(path, "k"));
  const std::string s_path = Field(path, "S");
  const Json& s = Require(j, "S", path);
  if (!s.is_array()) throw SchemaError(s_path, "expected an array");
  QuantitySet tradeable;
  for (std::size_t i = 0; i < s.size(); ++i) {
    tradeable.push_back(Integer(s[i], Index(s_path, i)));
  }
  TiePolicy policy = TiePolicy::kFavorHighest;
  if (j.contains("tie")) {
    const std::string where = Field(path, "tie");
    policy = AtPath(where, [&] { return ParseTiePolicy(String(j["tie"], where)); });
    if (policy == TiePolicy::kExplicit) {
      throw SchemaError(where, "explicit tie-breaking has no document form");
    }
  }
  const TieBreaking tie = policy == TiePolicy::kFavorHighest
                              ? TieBreaking::FavorHighest()
                              : TieBreaking::FavorLowest();
  return AtPath(path, [&] {
    return FixedPriceMechanism(p, std::move(tradeable), k, tie);
  });
}

Json ToJson(const Schedule& schedule) {
  Json bundles = Json::array();
  for (Quantity b : schedule.bundles) bundles.push_back(b);
  Json out = Json::object();
  out["bundles"] = bundles;
  return out;
}

Schedule ScheduleFromJson(const Json& j, const std::string& path) {
  const std::string where = Field(path, "bundles");
  const Json& bundles = Require(j, "bundles", path);
  if (!bundles.is_array()) throw SchemaError(where, "expected an array");
  Schedule schedule;
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    schedule.bundles.push_back(Integer(bundles[i], Index(where, i)));
  }
  return schedule;
}

Json ToJson(const Violation& violation) {
  Json out = Json::object();
  out["kind"] = std::string(ToString(violation.kind));
  out["v"] = ToJson(violation.v);
  out["w"] = ToJson(violation.w);
  out["deviation"] =
      violation.deviation ? ToJson(*violation.deviation) : Json(nullptr);
  out["delta"] = violation.delta;
  return out;
}

std::string ViolationLine(const Violation& violation) {
  return ToJson(violation).dump();
}

Json ToJson(const InstanceSpec& instance) {
  Json out = Json::object();
  out["id"] = instance.id;
  out["k"] = instance.k;
  out["class"] = std::string(ToString(instance.cls));
  out["buyer"] = ToJson(instance.buyer);
  out["seller"] = ToJson(instance.seller);
  return out;
}

InstanceSpec InstanceFromJson(const Json& j) {
  if (!j.is_object()) throw SchemaError("$", "expected an object");
  const int k = Integer(Require(j, "k", "$"), "$.k");
  if (k < 1) throw SchemaError("$.k", "must be >= 1");
  ValuationClass cls = ValuationClass::kIncreasingSubmodular;
  if (j.contains("class")) {
    cls = AtPath("$.class",
                 [&] { return ParseValuationClass(String(j["class"], "$.class")); });
  }
  std::string id = "instance";
  if (j.contains("id")) id = String(j["id"], "$.id");
  Prior buyer = PriorFromJson(Require(j, "buyer", "$"), cls, Role::kBuyer, k,
                              "$.buyer");
  Prior seller = PriorFromJson(Require(j, "seller", "$"), cls, Role::kSeller,
                               k, "$.seller");
  return InstanceSpec{std::move(id), k, cls, std::move(buyer),
                      std::move(seller)};
}

InstanceSpec ParseInstance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
  return InstanceFromJson(j);
}

Json ToJson(const WelfareReport& report) {
  auto number = [](double x) {
    return std::isfinite(x) ? Json(x) : Json(FormatNumber(x));
  };
  Json out = Json::object();
  out["opt"] = number(report.opt);
  out["sw"] = number(report.sw);
  out["ratio"] = number(report.ratio);
  out["method"] = std::string(ToString(report.method));
  out["trials"] = report.trials;
  out["stderr_opt"] = report.stderr_opt;
  out["stderr_sw"] = report.stderr_sw;
  return out;
}

std::string CsvField(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string ReportCsvRow(std::string_view instance_id,
                         std::string_view mechanism,
                         const WelfareReport& report) {
  std::string row = CsvField(instance_id);
  row += ",";
  row += CsvField(mechanism);
  row += "," + FormatNumber(report.opt);
  row += "," + FormatNumber(report.sw);
  row += "," + FormatNumber(report.ratio);
  row += ",";
  row += ToString(report.method);
  row += "," + std::to_string(report.trials);
  row += "," + FormatNumber(report.stderr_sw);
  return row;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading " + path);
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace mbt::io
