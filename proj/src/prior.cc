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

#include "mbt/prior.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mbt {

namespace {

std::string Shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace

BaseDistribution BaseDistribution::Uniform(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw std::invalid_argument("uniform base needs finite lo < hi");
  }
  BaseDistribution d;
  d.kind_ = Kind::kUniform;
  d.knots_ = {{lo, 0.0}, {hi, 1.0}};
  return d;
}

BaseDistribution BaseDistribution::Exponential(double rate) {
  if (!std::isfinite(rate) || !(rate > 0.0)) {
    throw std::invalid_argument("exponential base needs a positive rate");
  }
  BaseDistribution d;
  d.kind_ = Kind::kExponential;
  d.rate_ = rate;
  return d;
}

BaseDistribution BaseDistribution::PiecewiseLinear(
    std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) {
    throw std::invalid_argument("piecewise-linear CDF needs >= 2 knots");
  }
  if (knots.front().second != 0.0 || knots.back().second != 1.0) {
    throw std::invalid_argument("piecewise-linear CDF must run from 0 to 1");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].first) ||
        !(knots[i].first > knots[i - 1].first) ||
        !(knots[i].second > knots[i - 1].second)) {
      throw std::invalid_argument(
          "piecewise-linear CDF knots must be strictly increasing");
    }
  }
  BaseDistribution d;
  d.kind_ = Kind::kPiecewiseLinear;
  d.knots_ = std::move(knots);
  return d;
}

double BaseDistribution::Cdf(double x) const {
  if (kind_ == Kind::kExponential) {
    return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
  }
  if (x <= knots_.front().first) return 0.0;
  if (x >= knots_.back().first) return 1.0;
  auto it = std::upper_bound(
      knots_.begin(), knots_.end(), x,
      [](double value, const auto& knot) { return value < knot.first; });
  const auto& [x1, f1] = *it;
  const auto& [x0, f0] = *(it - 1);
  return f0 + (f1 - f0) * (x - x0) / (x1 - x0);
}

double BaseDistribution::Quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("quantile level must lie in [0, 1]");
  }
  if (kind_ == Kind::kExponential) {
    if (u == 1.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-u) / rate_;
  }
  if (u <= 0.0) return knots_.front().first;
  if (u >= 1.0) return knots_.back().first;
  auto it = std::upper_bound(
      knots_.begin(), knots_.end(), u,
      [](double value, const auto& knot) { return value < knot.second; });
  const auto& [x1, f1] = *it;
  const auto& [x0, f0] = *(it - 1);
  return x0 + (x1 - x0) * (u - f0) / (f1 - f0);
}

double BaseDistribution::Mean() const {
  if (kind_ == Kind::kExponential) return 1.0 / rate_;
  double mean = 0.0;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    mean += 0.5 * (knots_[i].first + knots_[i - 1].first) *
            (knots_[i].second - knots_[i - 1].second);
  }
  return mean;
}

double BaseDistribution::SupportMin() const {
  return kind_ == Kind::kExponential ? 0.0 : knots_.front().first;
}

double BaseDistribution::SupportMax() const {
  return kind_ == Kind::kExponential ? std::numeric_limits<double>::infinity()
                                     : knots_.back().first;
}

std::vector<double> BaseDistribution::Kinks() const {
  std::vector<double> kinks;
  if (kind_ == Kind::kPiecewiseLinear) {
    for (std::size_t i = 1; i + 1 < knots_.size(); ++i) {
      kinks.push_back(knots_[i].first);
    }
  }
  return kinks;
}

std::string BaseDistribution::Describe() const {
  switch (kind_) {
    case Kind::kUniform:
      return "uniform(" + Shortest(knots_.front().first) + "," +
             Shortest(knots_.back().first) + ")";
    case Kind::kExponential:
      return "exponential(" + Shortest(rate_) + ")";
    case Kind::kPiecewiseLinear: {
      std::string out = "piecewise_linear(";
      for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (i > 0) out += ";";
        out += Shortest(knots_[i].first) + ":" + Shortest(knots_[i].second);
      }
      return out + ")";
    }
  }
  return {};
}

DiscretePrior::DiscretePrior(std::vector<Atom> support, ValuationClass cls)
    : support_(std::move(support)), cls_(cls) {
  if (support_.empty()) {
    throw std::invalid_argument("discrete prior needs a non-empty support");
  }
  const int k = support_.front().valuation.k();
  double total = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const Atom& atom = support_[i];
    if (atom.valuation.k() != k) {
      throw std::invalid_argument("support member " + std::to_string(i) +
                                  " has a different k");
    }
    if (!(atom.prob > 0.0) || !std::isfinite(atom.prob)) {
      throw std::invalid_argument("support member " + std::to_string(i) +
                                  " has non-positive probability");
    }
    if (auto bad = FirstClassViolation(atom.valuation, cls)) {
      throw std::invalid_argument(
          "support member " + std::to_string(i) + " is not " +
          std::string(ToString(cls)) + " (breaks at index " +
          std::to_string(*bad) + ")");
    }
    total += atom.prob;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("probabilities sum to " + Shortest(total) +
                                ", not 1");
  }
}

DiscretePrior DiscretePrior::PointMass(Valuation v, ValuationClass cls) {
  return DiscretePrior({Atom{std::move(v), 1.0}}, cls);
}

SortedIidPrior::SortedIidPrior(int k, BaseDistribution base, Role role)
    : k(k), base(std::move(base)), role(role) {
  if (k < 1) throw std::invalid_argument("sorted-iid prior needs k >= 1");
}

int PriorK(const Prior& prior) {
  if (const auto* d = std::get_if<DiscretePrior>(&prior)) return d->k();
  return std::get<SortedIidPrior>(prior).k;
}

ValuationClass PriorClass(const Prior& prior) {
  if (const auto* d = std::get_if<DiscretePrior>(&prior)) {
    return d->valuation_class();
  }
  return ValuationClass::kIncreasingSubmodular;
}

bool IsDiscrete(const Prior& prior) {
  return std::holds_alternative<DiscretePrior>(prior);
}

Valuation Sample(const DiscretePrior& prior, Rng& rng) {
  const double u = rng.Uniform01() * prior.cumulative_.back();
  auto it = std::upper_bound(prior.cumulative_.begin(),
                             prior.cumulative_.end(), u);
  if (it == prior.cumulative_.end()) --it;
  return prior.support_[it - prior.cumulative_.begin()].valuation;
}

Valuation SortedIidValuation(const SortedIidPrior& prior,
                             std::vector<double> draws) {
  if (static_cast<int>(draws.size()) != prior.k) {
    throw std::invalid_argument("sorted-iid valuation needs k draws");
  }
  if (prior.role == Role::kSeller) {
    std::sort(draws.begin(), draws.end());
  } else {
    std::sort(draws.begin(), draws.end(), std::greater<>());
  }
  return FromMarginals(MarginalProfile{prior.role, std::move(draws)});
}

Valuation Sample(const SortedIidPrior& prior, Rng& rng) {
  std::vector<double> draws(prior.k);
  for (double& d : draws) d = prior.base.Quantile(rng.Uniform01());
  return SortedIidValuation(prior, std::move(draws));
}

Valuation Sample(const Prior& prior, Rng& rng) {
  return std::visit([&rng](const auto& p) { return Sample(p, rng); }, prior);
}

double ThresholdMass(const Prior& prior, Money p) {
  if (const auto* d = std::get_if<DiscretePrior>(&prior)) {
    double mass = 0.0;
    for (const Atom& atom : d->support()) {
      const MarginalProfile m = MarginalProfileOf(atom.valuation, Role::kSeller);
      int count = 0;
      for (Money delta : m.deltas) count += delta <= p ? 1 : 0;
      mass += atom.prob * count;
    }
    return mass;
  }
  const auto& s = std::get<SortedIidPrior>(prior);
  if (s.role != Role::kSeller) {
    throw std::invalid_argument("threshold mass needs a seller prior");
  }
  return s.k * s.base.Cdf(p);
}

PriorSummary Describe(const Prior& prior) {
  if (const auto* d = std::get_if<DiscretePrior>(&prior)) {
    return PriorSummary{d->k(), "discrete", d->valuation_class(),
                        static_cast<int>(d->support().size()), std::nullopt,
                        std::nullopt};
  }
  const auto& s = std::get<SortedIidPrior>(prior);
  return PriorSummary{s.k, "sorted_iid", ValuationClass::kIncreasingSubmodular,
                      std::nullopt, s.base.Describe(), s.role};
}

}  // namespace mbt
