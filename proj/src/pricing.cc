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

#include "mbt/pricing.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace mbt {

std::string_view ToString(PriceMethod method) {
  switch (method) {
    case PriceMethod::kClosedForm:
      return "closed_form";
    case PriceMethod::kBisection:
      return "bisection";
    case PriceMethod::kDiscreteQuantile:
      return "discrete_quantile";
  }
  return {};
}

namespace {

void CheckTarget(const Prior& g, double target_mass) {
  const int k = PriorK(g);
  if (!(target_mass > 0.0) || target_mass > k) {
    throw std::invalid_argument("target mass must lie in (0, k]");
  }
  if (const auto* s = std::get_if<SortedIidPrior>(&g)) {
    if (s->role != Role::kSeller) {
      throw std::invalid_argument("threshold price needs a seller prior");
    }
  }
}

PriceSolution DiscreteQuantile(const DiscretePrior& g, double target_mass) {
  // Mass added at each distinct marginal value.
  std::map<Money, double> jumps;
  for (const Atom& atom : g.support()) {
    for (Money d : MarginalProfileOf(atom.valuation, Role::kSeller).deltas) {
      jumps[d] += atom.prob;
    }
  }
  // Probabilities only sum to 1 within 1e-12, so masses carry that slack.
  const double slack = 1e-12 * g.k();
  double mass = 0.0;
  for (const auto& [value, jump] : jumps) {
    mass += jump;
    if (mass >= target_mass - slack) {
      return PriceSolution{value, mass, target_mass,
                           PriceMethod::kDiscreteQuantile, 0};
    }
  }
  return PriceSolution{jumps.rbegin()->first, mass, target_mass,
                       PriceMethod::kDiscreteQuantile, 0};
}

}  // namespace

PriceSolution SolveThresholdPrice(const Prior& g, double target_mass,
                                  double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  CheckTarget(g, target_mass);
  if (const auto* d = std::get_if<DiscretePrior>(&g)) {
    return DiscreteQuantile(*d, target_mass);
  }
  const auto& s = std::get<SortedIidPrior>(g);
  const Money p = s.base.Quantile(std::min(1.0, target_mass / s.k));
  return PriceSolution{p, ThresholdMass(g, p), target_mass,
                       PriceMethod::kClosedForm, 0};
}

PriceSolution BisectThresholdPrice(const Prior& g, double target_mass,
                                   double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  CheckTarget(g, target_mass);
  const auto* s = std::get_if<SortedIidPrior>(&g);
  if (s == nullptr) {
    throw std::invalid_argument(
        "bisection needs a continuous mass curve; discrete priors use the "
        "quantile rule");
  }
  double lo = s->base.Quantile(1e-6);
  double hi = s->base.Quantile(1.0 - 1e-6);
  const double width = hi > lo ? hi - lo : 1.0;
  double mass_lo = ThresholdMass(g, lo);
  double mass_hi = ThresholdMass(g, hi);
  int widenings = 0;
  double step = width;
  while ((mass_lo - target_mass > tol || target_mass - mass_hi > tol) &&
         widenings < 64) {
    if (mass_lo - target_mass > tol) {
      lo -= step;
      mass_lo = ThresholdMass(g, lo);
    }
    if (target_mass - mass_hi > tol) {
      hi += step;
      mass_hi = ThresholdMass(g, hi);
    }
    step *= 2.0;
    ++widenings;
  }
  if (mass_lo - target_mass > tol || target_mass - mass_hi > tol) {
    throw PriceSolverError(
        "threshold price: no bracket after 64 doublings",
        {target_mass, lo, hi, mass_lo, mass_hi, widenings});
  }
  if (std::abs(mass_lo - target_mass) <= tol) {
    return PriceSolution{lo, mass_lo, target_mass, PriceMethod::kBisection, 0};
  }
  if (std::abs(mass_hi - target_mass) <= tol) {
    return PriceSolution{hi, mass_hi, target_mass, PriceMethod::kBisection, 0};
  }
  for (int iter = 1; iter <= 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double mass = ThresholdMass(g, mid);
    if (std::abs(mass - target_mass) <= tol) {
      return PriceSolution{mid, mass, target_mass, PriceMethod::kBisection,
                           iter};
    }
    if (mass < target_mass) {
      lo = mid;
      mass_lo = mass;
    } else {
      hi = mid;
      mass_hi = mass;
    }
  }
  throw PriceSolverError("threshold price: bisection did not converge",
                         {target_mass, lo, hi, mass_lo, mass_hi, 200});
}

QuantileDraw QuantileFromUniform(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("quantile source must lie in [0, 1]");
  }
  return QuantileDraw{std::exp(u - 1.0), u};
}

QuantileDraw SampleQuantile(Rng& rng) {
  return QuantileFromUniform(rng.Uniform01());
}

namespace {

PricedMechanism UnitScheduleAt(const PriceSolution& solution, int k) {
  if (!std::isfinite(solution.p)) {
    throw std::invalid_argument("threshold price is unbounded");
  }
  return PricedMechanism{FixedPriceMechanism::UnitSchedule(solution.p, k),
                         solution};
}

}  // namespace

PricedMechanism BuildDet2(const Prior& g) {
  const int k = PriorK(g);
  return UnitScheduleAt(SolveThresholdPrice(g, k / 2.0), k);
}

GrqmRealization RealizeGrqm(const Prior& g, const QuantileDraw& draw) {
  const int k = PriorK(g);
  return GrqmRealization{UnitScheduleAt(SolveThresholdPrice(g, draw.x * k), k),
                         draw};
}

GrqmRealization BuildGrqm(const Prior& g, Rng& rng) {
  return RealizeGrqm(g, SampleQuantile(rng));
}

}  // namespace mbt
