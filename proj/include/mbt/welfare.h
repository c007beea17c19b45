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

// Gains from trade, the efficient benchmark OPT and expected social welfare
// of a mechanism, evaluated exactly (finite supports), by order-statistic
// quadrature (sorted-iid sellers) or by Monte Carlo.

#ifndef MBT_WELFARE_H_
#define MBT_WELFARE_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "mbt/mechanism.h"
#include "mbt/pricing.h"
#include "mbt/prior.h"

namespace mbt {

// max{0, v^(q) - w~(q)}, 1 <= q <= k.
Money Gft(const Valuation& v, const Valuation& w, Quantity q);

// max{q : v^(q) >= w~(q)}, 0 if none. Throws std::invalid_argument unless
// both valuations are (weakly) increasing submodular.
Quantity EfficientQuantity(const Valuation& v, const Valuation& w);

// v(q) + w(k - q).
Money ProfileWelfare(const Valuation& v, const Valuation& w, Quantity q);

// Welfare of the efficient trade: w(k) + sum_q Gft(v, w, q) for submodular
// pairs, max_q v(q) + w(k - q) otherwise.
Money ProfileOpt(const Valuation& v, const Valuation& w);

enum class EvalMethod { kExact, kQuadrature, kMonteCarlo };

std::string_view ToString(EvalMethod method);
EvalMethod ParseEvalMethod(std::string_view text);

struct EvaluationMode {
  EvalMethod method = EvalMethod::kExact;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  // Gauss-Legendre nodes per smooth piece of the price-quantile integral.
  int quadrature_nodes = 256;

  static EvaluationMode Exact() { return {}; }
  static EvaluationMode Quadrature(int nodes = 256) {
    return {EvalMethod::kQuadrature, 0, 0, nodes};
  }
  static EvaluationMode MonteCarlo(std::int64_t trials, std::uint64_t seed) {
    return {EvalMethod::kMonteCarlo, trials, seed, 256};
  }
};

// Mode / prior / mechanism combination that cannot be evaluated.
class UnsupportedModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using EvaluatedMechanism = std::variant<FixedPriceMechanism, GrqmRule>;

std::string MechanismLabel(const EvaluatedMechanism& mech);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for exact / quadrature
};

struct WelfareReport {
  double opt = 0.0;
  double sw = 0.0;
  double ratio = 0.0;  // opt / sw
  EvalMethod method = EvalMethod::kExact;
  std::int64_t trials = 0;
  double stderr_opt = 0.0;
  double stderr_sw = 0.0;
};

// f: buyer prior, g: seller prior.
Estimate ExpectedOpt(const Prior& f, const Prior& g,
                     const EvaluationMode& mode);
Estimate ExpectedSw(const EvaluatedMechanism& mech, const Prior& f,
                    const Prior& g, const EvaluationMode& mode);
// Both quantities; Monte Carlo evaluates them on the same draws.
WelfareReport Evaluate(const EvaluatedMechanism& mech, const Prior& f,
                       const Prior& g, const EvaluationMode& mode);

// Order-statistic building blocks for a sorted-iid seller, exposed for
// testing. X_(q) is the q-th smallest of k i.i.d. draws from the base.

// Pr[X_(q) <= x] given F(x).
double OrderStatisticCdf(int k, int q, double cdf_value);
// E[X_(q) 1{X_(q) <= t}]; t may be +inf.
double TruncatedOrderStatisticMean(const BaseDistribution& base, int k, int q,
                                   double t);
// Expected welfare of the unit-schedule mechanism at price p against a fixed
// submodular buyer.
double SortedIidUnitScheduleWelfare(const Valuation& v,
                                    const SortedIidPrior& seller, Money p,
                                    bool accept_ties);
// OPT against a fixed submodular buyer.
double SortedIidOpt(const Valuation& v, const SortedIidPrior& seller);

}  // namespace mbt

#endif  // MBT_WELFARE_H_
