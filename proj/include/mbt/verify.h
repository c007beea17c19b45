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

// Exhaustive IR / SBB / DSIC checking of black-box mechanisms over finite
// valuation sets, and gadget-driven counterexample search.
//
// DSIC is only checked against misreports drawn from the supplied sets: the
// check is sound for any oracle and complete relative to those sets.
// All comparisons are exact.

#ifndef MBT_VERIFY_H_
#define MBT_VERIFY_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbt/mechanism.h"
#include "mbt/valuation.h"

namespace mbt {

struct MechanismUnderTest {
  std::function<Outcome(const Valuation& v, const Valuation& w)> oracle;
  int k;
  ValuationClass claimed_class;
  std::string name;

  static MechanismUnderTest FromFixedPrice(const FixedPriceMechanism& m,
                                           ValuationClass cls);
};

enum class ViolationKind { kIrBuyer, kIrSeller, kSbb, kDsicBuyer, kDsicSeller };

std::string_view ToString(ViolationKind kind);
ViolationKind ParseViolationKind(std::string_view text);

struct Violation {
  ViolationKind kind;
  Valuation v;  // true buyer valuation
  Valuation w;  // true seller valuation
  // The profitable misreport, for the DSIC kinds.
  std::optional<Valuation> deviation;
  // Gain from deviating, IR shortfall, or |rho_B + rho_S| for SBB. > 0.
  Money delta;
};

using Profile = std::pair<Valuation, Valuation>;

std::vector<Profile> CrossProfiles(std::span<const Valuation> buyers,
                                   std::span<const Valuation> sellers);

// Every IR or SBB breach over the profiles, in profile order.
std::vector<Violation> CheckIrSbb(const MechanismUnderTest& mut,
                                  std::span<const Profile> profiles);

// Every profitable unilateral misreport within the given sets: buyer
// deviations from v to v' in buyer_set, seller deviations from w to w' in
// seller_set. Ordered by (v, w) profile, buyer deviations before seller.
std::vector<Violation> CheckDsic(const MechanismUnderTest& mut,
                                 std::span<const Valuation> buyer_set,
                                 std::span<const Valuation> seller_set);

// Recomputes the violation's delta from the oracle; true iff it matches
// exactly and is positive.
bool Reverify(const MechanismUnderTest& mut, const Violation& violation);

struct SearchOptions {
  // Upper bound on the number of candidate valuations examined per role.
  int budget = 48;
  // Gadget epsilon; <= 0 picks p / 8.
  Money epsilon = 0.0;
};

// Gadget valuations for the search: the jump / near-price witnesses for
// every pair q < q' in S (only those in `cls` are kept) plus steep-then-slow
// valuations at every q*.
std::vector<Valuation> CounterexampleGadgets(const FixedPriceMechanism& m,
                                             ValuationClass cls,
                                             const SearchOptions& options = {});

// Looks for an IR or DSIC breach of m over valuations of `cls`: gadgets
// first, then the lattice on multiples of p/2, in a deterministic order.
std::optional<Violation> SearchCounterexample(
    const FixedPriceMechanism& m, ValuationClass cls,
    const SearchOptions& options = {});

}  // namespace mbt

#endif  // MBT_VERIFY_H_
