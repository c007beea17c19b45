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

// Prior-dependent unit prices: the deterministic half-supply price ("det2")
// and the random quantile price ("grqm"), both solved from the seller's
// threshold mass curve sum_q Pr[w~(q) <= p].

#ifndef MBT_PRICING_H_
#define MBT_PRICING_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "mbt/mechanism.h"
#include "mbt/prior.h"
#include "mbt/rng.h"

namespace mbt {

enum class PriceMethod { kClosedForm, kBisection, kDiscreteQuantile };

std::string_view ToString(PriceMethod method);

struct PriceSolution {
  Money p = 0.0;
  double achieved_mass = 0.0;
  double target_mass = 0.0;
  PriceMethod method = PriceMethod::kClosedForm;
  int iterations = 0;
};

inline constexpr double kDefaultMassTolerance = 1e-9;

// Bracketing or convergence failure in the bisection solver.
class PriceSolverError : public std::runtime_error {
 public:
  struct Diagnostics {
    double target_mass;
    double lo;
    double hi;
    double mass_lo;
    double mass_hi;
    int iterations;
  };

  PriceSolverError(const std::string& what, Diagnostics diagnostics)
      : std::runtime_error(what), diagnostics_(diagnostics) {}

  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

// Price p with ThresholdMass(g, p) = target_mass.
//  sorted-iid: p = F^{-1}(target / k), closed form (may be +inf at target = k
//              for unbounded bases).
//  discrete:   least support marginal with mass >= target (the mass curve is
//              a step function, so equality is generally unattainable).
// Throws std::invalid_argument if target is outside (0, k] or g is a buyer
// prior.
PriceSolution SolveThresholdPrice(const Prior& g, double target_mass,
                                  double tol = kDefaultMassTolerance);

// Bisection on the continuous mass curve of a sorted-iid seller prior. The
// bracket starts at the base's 1e-6 / 1 - 1e-6 quantiles and is widened
// geometrically; throws PriceSolverError after 64 widenings without a
// bracket, or if tolerance is not reached.
PriceSolution BisectThresholdPrice(const Prior& g, double target_mass,
                                   double tol = kDefaultMassTolerance);

// x in [1/e, 1] with CDF ln(e x), drawn by inversion: x = exp(u - 1).
struct QuantileDraw {
  double x;
  double source_uniform;
};

QuantileDraw QuantileFromUniform(double u);
QuantileDraw SampleQuantile(Rng& rng);

struct PricedMechanism {
  FixedPriceMechanism mechanism;
  PriceSolution price;
};

// Unit schedule at the price where the seller is expected to sell k/2 units;
// favor-highest tie-breaking.
PricedMechanism BuildDet2(const Prior& g);

struct GrqmRealization {
  PricedMechanism priced;
  QuantileDraw draw;
};

GrqmRealization RealizeGrqm(const Prior& g, const QuantileDraw& draw);
// One realization of the random quantile mechanism. Throws
// std::invalid_argument if the drawn price is unbounded.
GrqmRealization BuildGrqm(const Prior& g, Rng& rng);

// The randomized mechanism as a whole: a distribution over unit-schedule
// fixed price mechanisms, priced from `pricing_prior`.
struct GrqmRule {
  Prior pricing_prior;
};

}  // namespace mbt

#endif  // MBT_PRICING_H_
