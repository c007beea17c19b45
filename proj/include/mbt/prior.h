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

// Distributions over valuation functions: finite-support priors and the
// sorted-i.i.d. marginal family, with sampling and threshold mass.

#ifndef MBT_PRIOR_H_
#define MBT_PRIOR_H_

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mbt/rng.h"
#include "mbt/valuation.h"

namespace mbt {

// One-dimensional base distribution with a continuous, strictly increasing
// CDF on its support.
class BaseDistribution {
 public:
  enum class Kind { kUniform, kExponential, kPiecewiseLinear };

  static BaseDistribution Uniform(double lo, double hi);
  static BaseDistribution Exponential(double rate);
  // Knots (x_i, F(x_i)) with both coordinates strictly increasing, F starting
  // at 0 and ending at 1.
  static BaseDistribution PiecewiseLinear(
      std::vector<std::pair<double, double>> knots);

  Kind kind() const { return kind_; }
  double Cdf(double x) const;
  // Inverse CDF on [0, 1]; Quantile(1) may be +inf.
  double Quantile(double u) const;
  double Mean() const;
  double SupportMin() const;
  double SupportMax() const;  // +inf for exponential
  // Points inside the support where the density is discontinuous.
  std::vector<double> Kinks() const;
  // e.g. "uniform(0,10)", "exponential(1)".
  std::string Describe() const;

  const std::vector<std::pair<double, double>>& knots() const {
    return knots_;
  }
  double rate() const { return rate_; }

 private:
  BaseDistribution() = default;

  Kind kind_ = Kind::kUniform;
  double rate_ = 1.0;
  // Uniform is stored as the two-knot piecewise-linear CDF.
  std::vector<std::pair<double, double>> knots_;
};

struct Atom {
  Valuation valuation;
  double prob;
};

// Finite support over valuations sharing one k. Probabilities are positive
// and sum to 1 within 1e-12; every member passes the declared class.
class DiscretePrior {
 public:
  DiscretePrior(std::vector<Atom> support, ValuationClass cls);

  static DiscretePrior PointMass(Valuation v, ValuationClass cls);

  int k() const { return support_.front().valuation.k(); }
  ValuationClass valuation_class() const { return cls_; }
  const std::vector<Atom>& support() const { return support_; }

 private:
  std::vector<Atom> support_;
  std::vector<double> cumulative_;
  ValuationClass cls_;

  friend Valuation Sample(const DiscretePrior& prior, Rng& rng);
};

// k i.i.d. draws from `base`, sorted into a marginal profile: ascending for a
// seller (w~ non-decreasing), descending for a buyer (v^ non-increasing).
// Sampled valuations are increasing submodular up to ties (weak strictness).
struct SortedIidPrior {
  int k;
  BaseDistribution base;
  Role role;

  SortedIidPrior(int k, BaseDistribution base, Role role);
};

using Prior = std::variant<DiscretePrior, SortedIidPrior>;

int PriorK(const Prior& prior);
ValuationClass PriorClass(const Prior& prior);
bool IsDiscrete(const Prior& prior);

Valuation Sample(const DiscretePrior& prior, Rng& rng);
Valuation Sample(const SortedIidPrior& prior, Rng& rng);
Valuation Sample(const Prior& prior, Rng& rng);

// Builds the valuation a sorted-iid prior yields for the given raw draws.
Valuation SortedIidValuation(const SortedIidPrior& prior,
                             std::vector<double> draws);

// Expected number of units the seller is willing to sell at unit price p:
// sum over q of Pr[w~(q) <= p]. For a sorted-iid seller this is k * F(p).
// Throws std::invalid_argument for a sorted-iid buyer prior.
double ThresholdMass(const Prior& prior, Money p);

struct PriorSummary {
  int k;
  std::string kind;  // "discrete" | "sorted_iid"
  ValuationClass cls;
  std::optional<int> support_size;
  std::optional<std::string> base;
  std::optional<Role> role;
};

PriorSummary Describe(const Prior& prior);

}  // namespace mbt

#endif  // MBT_PRIOR_H_
