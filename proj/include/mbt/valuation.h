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

// Valuation functions over unit counts, their marginal profiles, class
// membership tests, exhaustive lattice enumeration and the gadget
// valuations used to build counterexamples.

#ifndef MBT_VALUATION_H_
#define MBT_VALUATION_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mbt {

using Money = double;
using Quantity = int;

enum class Role { kBuyer, kSeller };

enum class ValuationClass { kIncreasing, kIncreasingSubmodular };

// Strict increase is required everywhere except for sampled valuations,
// where ties in continuous draws are tolerated.
enum class Strictness { kStrict, kWeak };

std::string_view ToString(Role role);
std::string_view ToString(ValuationClass cls);
Role ParseRole(std::string_view text);
ValuationClass ParseValuationClass(std::string_view text);

// A function v : {0, 1, ..., k} -> money with v(0) = 0. Immutable.
class Valuation {
 public:
  // Throws std::invalid_argument unless values[0] == 0, the vector holds at
  // least two entries, and every entry is finite and non-negative.
  explicit Valuation(std::vector<Money> values);

  int k() const { return static_cast<int>(values_.size()) - 1; }
  Money operator()(Quantity q) const { return values_.at(q); }
  std::span<const Money> values() const { return values_; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend auto operator<=>(const Valuation&, const Valuation&) = default;

 private:
  std::vector<Money> values_;
};

// Buyer profile: v^(q) = v(q) - v(q-1).
// Seller profile: w~(q) = w(k-q+1) - w(k-q), the loss from selling the q-th
// unit. deltas[0] holds q = 1.
struct MarginalProfile {
  Role role = Role::kBuyer;
  std::vector<Money> deltas;

  int k() const { return static_cast<int>(deltas.size()); }
  // 1-based access matching the usual notation.
  Money at(Quantity q) const { return deltas.at(q - 1); }
};

MarginalProfile MarginalProfileOf(const Valuation& v, Role role);

// Inverse of MarginalProfileOf. Throws std::invalid_argument on negative
// deltas or an empty profile.
Valuation FromMarginals(const MarginalProfile& profile);

// Exact comparison on the stored doubles.
bool Validate(const Valuation& v, ValuationClass cls,
              Strictness strictness = Strictness::kStrict);

// Index q at which the class invariant first breaks (the right end of the
// offending step), or nullopt if v is in the class.
std::optional<Quantity> FirstClassViolation(
    const Valuation& v, ValuationClass cls,
    Strictness strictness = Strictness::kStrict);

// Calls `visit` on every valuation of the class whose values[1..k] are drawn
// from `grid` (ascending), in lexicographic order. Stops early when `visit`
// returns false. Throws std::invalid_argument if grid is not strictly
// ascending or k < 1.
void ForEachLattice(int k, std::span<const Money> grid, ValuationClass cls,
                    const std::function<bool(const Valuation&)>& visit);

std::vector<Valuation> EnumerateLattice(int k, std::span<const Money> grid,
                                        ValuationClass cls);

// Gadget valuations. All throw std::invalid_argument when the parameters
// cannot produce an increasing valuation.

// steep_rate * q up to q_star, then slow_rate per unit.
Valuation SteepThenSlow(int k, Quantity q_star, Money steep_rate,
                        Money slow_rate);

// Near-flat at filler_rate per unit except for prescribed jumps: at each
// (q, value) the function takes exactly `value`, and grows at filler_rate
// from there until the next jump.
Valuation JumpAt(int k, std::span<const std::pair<Quantity, Money>> points,
                 Money filler_rate);

// Utility of trading each quantity at unit price p is -eps for every
// positive quantity except favored_q, where it is +eps.
//  buyer:  v(q) = p*q - eps, except v(favored_q) = p*favored_q + eps.
//  seller: w(k) = k*p, w(k-q) = p*(k-q) - eps, except
//          w(k-favored_q) = p*(k-favored_q) + eps. w(0) stays 0, so selling
//          all k units is utility-neutral and favored_q must be < k.
// Requires p > 2*eps > 0.
Valuation NearPrice(int k, Money p, Money eps, Quantity favored_q, Role role);

// Default "extreme" rates for gadgets given the prices in play.
Money DefaultSteepRate(Money max_price);
Money DefaultSlowRate(Money min_positive_price);

}  // namespace mbt

#endif  // MBT_VALUATION_H_
