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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.h"

namespace mbt {
namespace {

using V = std::vector<Money>;

const Valuation kV(V{0, 5, 8, 9});
const Valuation kW(V{0, 3, 5, 6});

TEST(PreferredSetTest, Examples) {
  EXPECT_EQ(PreferredSet(Role::kBuyer, kV, 2, {1, 2, 3}), (QuantitySet{2}));
  EXPECT_EQ(PreferredSet(Role::kSeller, kW, 2, {1, 2, 3}),
            (QuantitySet{1, 2}));
  EXPECT_EQ(PreferredSet(Role::kBuyer, kV, 0, {1, 2, 3}), (QuantitySet{3}));
  EXPECT_EQ(PreferredSet(Role::kBuyer, kV, 100, {1, 2}), (QuantitySet{0}));
}

TEST(FixedPriceMechanismTest, Construction) {
  EXPECT_THROW(FixedPriceMechanism(-1, {1}, 2), std::invalid_argument);
  EXPECT_THROW(FixedPriceMechanism(INFINITY, {1}, 2), std::invalid_argument);
  EXPECT_THROW(FixedPriceMechanism(1, {}, 2), std::invalid_argument);
  EXPECT_THROW(FixedPriceMechanism(1, {3}, 2), std::invalid_argument);
  EXPECT_THROW(FixedPriceMechanism(1, {0, 1}, 2), std::invalid_argument);
  FixedPriceMechanism m(1, {2, 1, 2}, 3);
  EXPECT_EQ(m.tradeable(), (QuantitySet{1, 2}));
  EXPECT_FALSE(m.is_unit_schedule());
  EXPECT_TRUE(FixedPriceMechanism::UnitSchedule(1, 3).is_unit_schedule());
  EXPECT_EQ(m.tie().policy(), TiePolicy::kFavorHighest);
}

TEST(RunDirectTest, Examples) {
  FixedPriceMechanism m(2, {1, 2, 3}, 3);
  EXPECT_EQ(RunDirect(m, kV, kW), (Outcome{2, 1, 4, -4}));

  // Seller utilities w(3 - q) + 3q over {0, 1, 2} are 102, 104, 106: a
  // seller this far above the price still sells two units.
  FixedPriceMechanism m2(3, {1, 2}, 3);
  EXPECT_EQ(RunDirect(m2, kV, Valuation(V{0, 100, 101, 102})),
            (Outcome{2, 1, 6, -6}));
  // A genuinely steep seller keeps everything.
  EXPECT_EQ(RunDirect(m2, kV, Valuation(V{0, 100, 200, 300})), NoTrade(3));

  FixedPriceMechanism expensive(10, {1, 2, 3}, 3);
  EXPECT_EQ(RunDirect(expensive, kV, kW), NoTrade(3));
}

TEST(RunDirectTest, DisjointSetsTakeMinOfMaxima) {
  // Buyer wants 2, seller wants 1: min(2, 1) = 1.
  FixedPriceMechanism m(1, {1, 2}, 2);
  const Outcome o = m.Run(Valuation(V{0, 0.1, 10}), Valuation(V{0, 3, 3.5}));
  EXPECT_EQ(o.buyer_units, 1);
  EXPECT_EQ(o.buyer_payment, 1);
}

TEST(RunDirectTest, FavorLowestPicksSmallestMaximizer) {
  FixedPriceMechanism m(2, {1, 2, 3}, 3, TieBreaking::FavorLowest());
  // Seller argmax is {1, 2}; lowest is 1.
  EXPECT_EQ(m.Run(kV, kW).buyer_units, 1);
}

TEST(RunDirectTest, ExplicitPolicy) {
  auto all = [](const QuantitySet& s, const Valuation&) { return s; };
  auto smallest = [](const QuantitySet& s, const Valuation&, const Valuation&) {
    return s.front();
  };
  FixedPriceMechanism m(2, {1, 2, 3}, 3,
                        TieBreaking::Explicit(all, all, smallest));
  EXPECT_EQ(m.Run(kV, kW).buyer_units, 2);

  auto bogus = [](const QuantitySet&, const Valuation&) {
    return QuantitySet{7};
  };
  FixedPriceMechanism broken(2, {1, 2, 3}, 3,
                             TieBreaking::Explicit(bogus, all, smallest));
  EXPECT_THROW(broken.Run(kV, kW), std::logic_error);
  EXPECT_THROW(TieBreaking::Explicit(nullptr, all, smallest),
               std::invalid_argument);
}

TEST(RunSequentialTest, Examples) {
  const auto high = TieBreaking::FavorHighest();
  EXPECT_EQ(RunSequential(2, {{1, 1, 1}}, high, kV, kW),
            (Outcome{2, 1, 4, -4}));
  EXPECT_EQ(RunSequential(2, {{3}}, high, kV, kW), (Outcome{3, 0, 6, -6}));
  EXPECT_EQ(RunSequential(2, {{}}, high, kV, kW), NoTrade(3));
  // Strict acceptance rejects the tied second unit.
  EXPECT_EQ(RunSequential(2, {{1, 1, 1}}, TieBreaking::FavorLowest(), kV, kW)
                .buyer_units,
            1);
  EXPECT_THROW(RunSequential(2, {{2, 2}}, high, kV, kW),
               std::invalid_argument);
  EXPECT_THROW(RunSequential(2, {{0}}, high, kV, kW), std::invalid_argument);
}

TEST(ScheduleTest, Conversions) {
  EXPECT_EQ(ScheduleFor({1, 3, 4}).bundles, (std::vector<Quantity>{1, 2, 1}));
  EXPECT_EQ(CumulativeQuantities({{1, 2, 1}}), (QuantitySet{1, 3, 4}));
}

TEST(UtilitiesTest, Examples) {
  const Utilities a = UtilitiesOf({2, 1, 4, -4}, kV, kW);
  EXPECT_EQ(a.buyer, 4);
  EXPECT_EQ(a.seller_gain, 1);
  const Utilities b = UtilitiesOf(NoTrade(3), kV, kW);
  EXPECT_EQ(b.buyer, 0);
  EXPECT_EQ(b.seller_gain, 0);
  const Utilities c =
      UtilitiesOf({1, 1, 1, -1}, Valuation(V{0, 0.1, 10}), Valuation(V{0, 3, 3.5}));
  EXPECT_DOUBLE_EQ(c.buyer, -0.9);
  EXPECT_EQ(c.seller_gain, 0.5);
}

TEST(RunDirectTest, MatchesOracleOnLattice) {
  const V grid{0.5, 1, 1.5, 2, 3, 4.5};
  for (int k = 1; k <= 3; ++k) {
    const auto lattice = EnumerateLattice(k, grid, ValuationClass::kIncreasing);
    for (double p : {0.0, 0.5, 1.0, 1.5}) {
      for (int mask = 1; mask < (1 << k); ++mask) {
        QuantitySet s;
        for (int q = 1; q <= k; ++q) {
          if (mask & (1 << (q - 1))) s.push_back(q);
        }
        for (bool high : {true, false}) {
          FixedPriceMechanism m(p, s, k,
                                high ? TieBreaking::FavorHighest()
                                     : TieBreaking::FavorLowest());
          for (const Valuation& v : lattice) {
            for (const Valuation& w : lattice) {
              const Outcome o = m.Run(v, w);
              const oracle::Trade t = oracle::FixedPrice(
                  p, s, V(v.values().begin(), v.values().end()),
                  V(w.values().begin(), w.values().end()), high);
              ASSERT_EQ(o.buyer_units, t.q);
              ASSERT_EQ(o.buyer_payment, t.payment);
              ASSERT_EQ(o.buyer_payment, -o.seller_payment);
              ASSERT_EQ(o.buyer_units + o.seller_units, k);
            }
          }
        }
      }
    }
  }
}

TEST(RunDirectTest, DemandFallsAndSupplyRisesWithPrice) {
  // The traded quantity itself is not monotone in p (at p = 0 nobody sells);
  // its two ingredients are.
  EXPECT_EQ(FixedPriceMechanism::UnitSchedule(0, 3).Run(kV, kW).buyer_units, 0);
  EXPECT_EQ(FixedPriceMechanism::UnitSchedule(2, 3).Run(kV, kW).buyer_units, 2);
  const V grid{1, 2, 3, 4, 5, 6};
  const QuantitySet all{1, 2, 3};
  const auto lattice =
      EnumerateLattice(3, grid, ValuationClass::kIncreasingSubmodular);
  for (const Valuation& v : lattice) {
    Quantity demand = 3;
    Quantity supply = 0;
    for (double p = 0; p <= 7; p += 0.5) {
      const Quantity d = PreferredSet(Role::kBuyer, v, p, all).back();
      const Quantity s = PreferredSet(Role::kSeller, v, p, all).back();
      EXPECT_LE(d, demand);
      EXPECT_GE(s, supply);
      demand = d;
      supply = s;
    }
  }
}

TEST(TiePolicyTest, Strings) {
  EXPECT_EQ(ToString(TiePolicy::kFavorLowest), "favor_lowest");
  EXPECT_EQ(ParseTiePolicy("favor_highest"), TiePolicy::kFavorHighest);
  EXPECT_THROW(ParseTiePolicy("random"), std::invalid_argument);
}

}  // namespace
}  // namespace mbt
