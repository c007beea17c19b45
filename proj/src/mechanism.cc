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

#include "mbt/mechanism.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <string>

namespace mbt {

Outcome NoTrade(int k) { return Outcome{0, k, 0.0, 0.0}; }

std::string_view ToString(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::kFavorHighest:
      return "favor_highest";
    case TiePolicy::kFavorLowest:
      return "favor_lowest";
    case TiePolicy::kExplicit:
      return "explicit";
  }
  return {};
}

TiePolicy ParseTiePolicy(std::string_view text) {
  if (text == "favor_highest") return TiePolicy::kFavorHighest;
  if (text == "favor_lowest") return TiePolicy::kFavorLowest;
  if (text == "explicit") return TiePolicy::kExplicit;
  throw std::invalid_argument("unknown tie policy '" + std::string(text) + "'");
}

TieBreaking TieBreaking::FavorHighest() {
  return TieBreaking(TiePolicy::kFavorHighest);
}

TieBreaking TieBreaking::FavorLowest() {
  return TieBreaking(TiePolicy::kFavorLowest);
}

TieBreaking TieBreaking::Explicit(SetSelector buyer, SetSelector seller,
                                  CommonSelector common) {
  if (!buyer || !seller || !common) {
    throw std::invalid_argument("explicit tie-breaking needs all selectors");
  }
  TieBreaking tie(TiePolicy::kExplicit);
  tie.buyer_ = std::move(buyer);
  tie.seller_ = std::move(seller);
  tie.common_ = std::move(common);
  return tie;
}

namespace {

QuantitySet ApplySetPolicy(TiePolicy policy,
                           const TieBreaking::SetSelector& selector,
                           const QuantitySet& argmax, const Valuation& val) {
  switch (policy) {
    case TiePolicy::kFavorHighest:
      return {argmax.back()};
    case TiePolicy::kFavorLowest:
      return {argmax.front()};
    case TiePolicy::kExplicit:
      break;
  }
  QuantitySet chosen = selector(argmax, val);
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  if (chosen.empty() ||
      !std::includes(argmax.begin(), argmax.end(), chosen.begin(),
                     chosen.end())) {
    throw std::logic_error(
        "tie-breaking selector must return a non-empty subset of the argmax");
  }
  return chosen;
}

}  // namespace

QuantitySet TieBreaking::SelectBuyer(const QuantitySet& argmax,
                                     const Valuation& v) const {
  return ApplySetPolicy(policy_, buyer_, argmax, v);
}

QuantitySet TieBreaking::SelectSeller(const QuantitySet& argmax,
                                      const Valuation& w) const {
  return ApplySetPolicy(policy_, seller_, argmax, w);
}

Quantity TieBreaking::SelectCommon(const QuantitySet& intersection,
                                   const Valuation& v,
                                   const Valuation& w) const {
  if (policy_ != TiePolicy::kExplicit) {
    // Both selected sets are singletons, so the intersection is too.
    return intersection.front();
  }
  const Quantity q = common_(intersection, v, w);
  if (!std::binary_search(intersection.begin(), intersection.end(), q)) {
    throw std::logic_error(
        "common tie-breaker must pick an element of the intersection");
  }
  return q;
}

QuantitySet PreferredSet(Role role, const Valuation& val, Money p,
                         const QuantitySet& tradeable) {
  const int k = val.k();
  auto utility = [&](Quantity q) {
    return role == Role::kBuyer ? val(q) - q * p : val(k - q) + q * p;
  };
  QuantitySet best{0};
  Money best_utility = utility(0);
  for (Quantity q : tradeable) {
    if (q < 1 || q > k) {
      throw std::invalid_argument("tradeable quantity outside [1, k]");
    }
    const Money u = utility(q);
    if (u > best_utility) {
      best_utility = u;
      best = {q};
    } else if (u == best_utility) {
      best.push_back(q);
    }
  }
  return best;
}

FixedPriceMechanism::FixedPriceMechanism(Money p, QuantitySet tradeable, int k,
                                         TieBreaking tie)
    : price_(p), tradeable_(std::move(tradeable)), k_(k), tie_(std::move(tie)) {
  if (!std::isfinite(p) || p < 0.0) {
    throw std::invalid_argument("unit price must be finite and >= 0");
  }
  if (k < 1) throw std::invalid_argument("mechanism needs k >= 1");
  std::sort(tradeable_.begin(), tradeable_.end());
  tradeable_.erase(std::unique(tradeable_.begin(), tradeable_.end()),
                   tradeable_.end());
  if (tradeable_.empty()) {
    throw std::invalid_argument("tradeable set S must be non-empty");
  }
  if (tradeable_.front() < 1 || tradeable_.back() > k) {
    throw std::invalid_argument("tradeable set S must lie within [1, k]");
  }
}

FixedPriceMechanism FixedPriceMechanism::UnitSchedule(Money p, int k,
                                                      TieBreaking tie) {
  QuantitySet all(k);
  for (int i = 0; i < k; ++i) all[i] = i + 1;
  return FixedPriceMechanism(p, std::move(all), k, std::move(tie));
}

Outcome FixedPriceMechanism::Run(const Valuation& v, const Valuation& w) const {
  if (v.k() != k_ || w.k() != k_) {
    throw std::invalid_argument("valuation k does not match the mechanism");
  }
  const QuantitySet buyer =
      tie_.SelectBuyer(PreferredSet(Role::kBuyer, v, price_, tradeable_), v);
  const QuantitySet seller =
      tie_.SelectSeller(PreferredSet(Role::kSeller, w, price_, tradeable_), w);
  QuantitySet common;
  std::set_intersection(buyer.begin(), buyer.end(), seller.begin(),
                        seller.end(), std::back_inserter(common));
  const Quantity q = common.empty() ? std::min(buyer.back(), seller.back())
                                    : tie_.SelectCommon(common, v, w);
  const Money payment = q * price_;
  return Outcome{q, k_ - q, payment, -payment};
}

Outcome RunDirect(const FixedPriceMechanism& m, const Valuation& v,
                  const Valuation& w) {
  return m.Run(v, w);
}

void ValidateSchedule(const Schedule& schedule, int k) {
  Quantity total = 0;
  for (Quantity b : schedule.bundles) {
    if (b < 1) throw std::invalid_argument("schedule bundles must be positive");
    total += b;
  }
  if (total > k) {
    throw std::invalid_argument("schedule offers more than k units");
  }
}

QuantitySet CumulativeQuantities(const Schedule& schedule) {
  QuantitySet out;
  Quantity total = 0;
  for (Quantity b : schedule.bundles) {
    total += b;
    out.push_back(total);
  }
  return out;
}

Schedule ScheduleFor(const QuantitySet& tradeable) {
  Schedule schedule;
  Quantity previous = 0;
  for (Quantity q : tradeable) {
    schedule.bundles.push_back(q - previous);
    previous = q;
  }
  return schedule;
}

Outcome RunSequential(Money p, const Schedule& schedule, const TieBreaking& tie,
                      const Valuation& v, const Valuation& w) {
  if (tie.policy() == TiePolicy::kExplicit) {
    throw std::invalid_argument(
        "sequential form supports favor_highest / favor_lowest only");
  }
  if (v.k() != w.k()) throw std::invalid_argument("mismatched k");
  const int k = v.k();
  ValidateSchedule(schedule, k);
  const bool accept_ties = tie.policy() == TiePolicy::kFavorHighest;
  Quantity traded = 0;
  for (Quantity bundle : schedule.bundles) {
    const Quantity c = traded + bundle;
    const Money ask = bundle * p;
    const Money buyer_gain = v(c) - v(traded);
    const Money seller_loss = w(k - traded) - w(k - c);
    const bool buyer_accepts =
        accept_ties ? buyer_gain >= ask : buyer_gain > ask;
    const bool seller_accepts =
        accept_ties ? seller_loss <= ask : seller_loss < ask;
    if (!buyer_accepts || !seller_accepts) break;
    traded = c;
  }
  const Money payment = traded * p;
  return Outcome{traded, k - traded, payment, -payment};
}

Utilities UtilitiesOf(const Outcome& o, const Valuation& v, const Valuation& w) {
  const int k = w.k();
  return Utilities{v(o.buyer_units) - o.buyer_payment,
                   w(o.seller_units) - o.seller_payment - w(k)};
}

}  // namespace mbt
