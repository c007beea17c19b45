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

// Multi-unit fixed price mechanisms, in direct-revelation form (preferred
// sets, tie-breaking, min of maxima) and in sequential posted-price form.

#ifndef MBT_MECHANISM_H_
#define MBT_MECHANISM_H_

#include <functional>
#include <string_view>
#include <vector>

#include "mbt/valuation.h"

namespace mbt {

// Sorted, duplicate-free.
using QuantitySet = std::vector<Quantity>;

struct Outcome {
  Quantity buyer_units = 0;   // q_B
  Quantity seller_units = 0;  // q_S
  Money buyer_payment = 0.0;  // rho_B
  Money seller_payment = 0.0; // rho_S

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

Outcome NoTrade(int k);

enum class TiePolicy { kFavorHighest, kFavorLowest, kExplicit };

std::string_view ToString(TiePolicy policy);
TiePolicy ParseTiePolicy(std::string_view text);

// Selection rules applied to the raw preferred sets. FavorHighest keeps only
// the largest preferred quantity of each agent, FavorLowest the smallest.
// Explicit selectors must be pure; their outputs are checked against the
// contract (non-empty subset of the argmax, a common element respectively)
// and a violation throws std::logic_error.
class TieBreaking {
 public:
  using SetSelector =
      std::function<QuantitySet(const QuantitySet& argmax, const Valuation&)>;
  using CommonSelector = std::function<Quantity(
      const QuantitySet& intersection, const Valuation& v, const Valuation& w)>;

  static TieBreaking FavorHighest();
  static TieBreaking FavorLowest();
  static TieBreaking Explicit(SetSelector buyer, SetSelector seller,
                              CommonSelector common);

  TiePolicy policy() const { return policy_; }

  QuantitySet SelectBuyer(const QuantitySet& argmax, const Valuation& v) const;
  QuantitySet SelectSeller(const QuantitySet& argmax, const Valuation& w) const;
  Quantity SelectCommon(const QuantitySet& intersection, const Valuation& v,
                        const Valuation& w) const;

 private:
  explicit TieBreaking(TiePolicy policy) : policy_(policy) {}

  TiePolicy policy_;
  SetSelector buyer_;
  SetSelector seller_;
  CommonSelector common_;
};

// Full argmax over S u {0} of the agent's utility at unit price p:
// buyer v(q) - q p, seller w(k - q) + q p.
QuantitySet PreferredSet(Role role, const Valuation& val, Money p,
                         const QuantitySet& tradeable);

// Trade any quantity of S at the announced unit price p. S is a non-empty
// subset of {1..k}; no-trade is always available.
class FixedPriceMechanism {
 public:
  // Throws std::invalid_argument for negative or non-finite p, an empty S,
  // or S outside {1..k}. S is sorted and deduplicated.
  FixedPriceMechanism(Money p, QuantitySet tradeable, int k,
                      TieBreaking tie = TieBreaking::FavorHighest());

  // S = {1..k}: one unit offered at a time.
  static FixedPriceMechanism UnitSchedule(Money p, int k,
                                          TieBreaking tie =
                                              TieBreaking::FavorHighest());

  Money price() const { return price_; }
  const QuantitySet& tradeable() const { return tradeable_; }
  int k() const { return k_; }
  const TieBreaking& tie() const { return tie_; }
  bool is_unit_schedule() const {
    return static_cast<int>(tradeable_.size()) == k_;
  }

  Outcome Run(const Valuation& v, const Valuation& w) const;

 private:
  Money price_;
  QuantitySet tradeable_;
  int k_;
  TieBreaking tie_;
};

Outcome RunDirect(const FixedPriceMechanism& m, const Valuation& v,
                  const Valuation& w);

// Pre-determined bundle sizes offered one after another.
struct Schedule {
  std::vector<Quantity> bundles;
};

// Throws std::invalid_argument for non-positive bundles or a total above k.
void ValidateSchedule(const Schedule& schedule, int k);
// Cumulative sums of the bundles.
QuantitySet CumulativeQuantities(const Schedule& schedule);
// The schedule whose cumulative sums are `tradeable`.
Schedule ScheduleFor(const QuantitySet& tradeable);

// Offers each bundle in turn; both agents must accept for the bundle to
// trade. Exact indifference is acceptance under FavorHighest and rejection
// under FavorLowest. Explicit tie policies have no sequential meaning and
// throw std::invalid_argument.
Outcome RunSequential(Money p, const Schedule& schedule, const TieBreaking& tie,
                      const Valuation& v, const Valuation& w);

struct Utilities {
  Money buyer;        // v(q_B) - rho_B
  Money seller_gain;  // w(q_S) - rho_S - w(k)
};

Utilities UtilitiesOf(const Outcome& o, const Valuation& v, const Valuation& w);

}  // namespace mbt

#endif  // MBT_MECHANISM_H_
