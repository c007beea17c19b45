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

#include "mbt/verify.h"

#include <gtest/gtest.h>

#include <vector>

namespace mbt {
namespace {

using V = std::vector<Money>;
constexpr auto kSub = ValuationClass::kIncreasingSubmodular;
constexpr auto kInc = ValuationClass::kIncreasing;

const V kGrid06{0, 1, 2, 3, 4, 5, 6};

std::vector<Violation> FullSuite(const FixedPriceMechanism& m,
                                 ValuationClass cls, const V& grid) {
  const MechanismUnderTest mut = MechanismUnderTest::FromFixedPrice(m, cls);
  const std::vector<Valuation> lattice = EnumerateLattice(m.k(), grid, cls);
  const std::vector<Profile> profiles = CrossProfiles(lattice, lattice);
  std::vector<Violation> out = CheckIrSbb(mut, profiles);
  for (Violation& v : CheckDsic(mut, lattice, lattice)) out.push_back(v);
  return out;
}

TEST(CheckIrSbbTest, SufficiencyOnSubmodularLattice) {
  EXPECT_TRUE(FullSuite(FixedPriceMechanism(2, {1, 2, 3}, 3), kSub, kGrid06)
                  .empty());
}

TEST(CheckIrSbbTest, SingleQuantityOnIncreasingLattice) {
  EXPECT_TRUE(
      FullSuite(FixedPriceMechanism(2, {1}, 1), kInc, {0, 1, 2, 3, 4, 5}).empty());
  EXPECT_TRUE(FullSuite(FixedPriceMechanism(2, {2}, 3), kInc, kGrid06).empty());
}

TEST(CheckIrSbbTest, DetectsBudgetImbalance) {
  MechanismUnderTest leaky{
      [](const Valuation& v, const Valuation&) {
        return Outcome{0, v.k(), 1.0, 0.0};
      },
      2, kSub, "leaky"};
  const Profile profile[] = {
      {Valuation(V{0, 5, 6}), Valuation(V{0, 5, 6})}};
  const std::vector<Violation> found = CheckIrSbb(leaky, profile);
  // Paying 1 for nothing also breaks the buyer's IR.
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(found[0].kind, ViolationKind::kIrBuyer);
  EXPECT_EQ(found[1].kind, ViolationKind::kSbb);
  EXPECT_EQ(found[1].delta, 1.0);
}

TEST(CheckIrSbbTest, IrBuyerWitness) {
  const FixedPriceMechanism m(1, {1, 2}, 2);
  const MechanismUnderTest mut = MechanismUnderTest::FromFixedPrice(m, kInc);
  const Profile profile[] = {
      {Valuation(V{0, 0.1, 10}), Valuation(V{0, 3, 3.5})}};
  const std::vector<Violation> found = CheckIrSbb(mut, profile);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].kind, ViolationKind::kIrBuyer);
  EXPECT_DOUBLE_EQ(found[0].delta, 0.9);
  EXPECT_TRUE(Reverify(mut, found[0]));
}

TEST(CheckDsicTest, BidDependentPriceIsCaught) {
  const std::vector<Valuation> lattice =
      EnumerateLattice(2, V{1, 2, 3, 4, 5, 6}, kSub);
  const Valuation top = lattice.back();
  const FixedPriceMechanism base(2, {1, 2}, 2);
  MechanismUnderTest shady{
      [&](const Valuation& v, const Valuation& w) {
        Outcome o = base.Run(v, w);
        if (v == top) {
          o.buyer_payment += o.buyer_units;
          o.seller_payment = -o.buyer_payment;
        }
        return o;
      },
      2, kSub, "shady"};
  const std::vector<Violation> found = CheckDsic(shady, lattice, lattice);
  bool buyer = false;
  for (const Violation& v : found) {
    buyer |= v.kind == ViolationKind::kDsicBuyer;
    EXPECT_TRUE(Reverify(shady, v));
  }
  EXPECT_TRUE(buyer);
}

TEST(ReverifyTest, RejectsTamperedViolations) {
  const FixedPriceMechanism m(1, {1, 2}, 2);
  const MechanismUnderTest mut = MechanismUnderTest::FromFixedPrice(m, kInc);
  Violation bogus{ViolationKind::kIrBuyer, Valuation(V{0, 0.1, 10}),
                  Valuation(V{0, 3, 3.5}), std::nullopt, 0.5};
  EXPECT_FALSE(Reverify(mut, bogus));
  Violation fake{ViolationKind::kDsicBuyer, Valuation(V{0, 5, 6}),
                 Valuation(V{0, 5, 6}), std::nullopt, 1.0};
  EXPECT_FALSE(Reverify(mut, fake));
}

TEST(SearchCounterexampleTest, FindsWitnessForTwoQuantities) {
  const FixedPriceMechanism m(1, {1, 2}, 2);
  const std::optional<Violation> found = SearchCounterexample(m, kInc);
  ASSERT_TRUE(found.has_value());
  EXPECT_GT(found->delta, 0.0);
  EXPECT_TRUE(
      Reverify(MechanismUnderTest::FromFixedPrice(m, kInc), *found));
}

TEST(SearchCounterexampleTest, NothingForSubmodularOrSingleQuantity) {
  EXPECT_FALSE(
      SearchCounterexample(FixedPriceMechanism(2, {1, 2, 3}, 3), kSub, {1000})
          .has_value());
  EXPECT_FALSE(
      SearchCounterexample(FixedPriceMechanism(2, {2}, 3), kInc).has_value());
}

TEST(SearchCounterexampleTest, WitnessFamilyOnManyMechanisms) {
  for (int k = 2; k <= 5; ++k) {
    for (double p : {0.25, 1.0, 3.0}) {
      for (int mask = 1; mask < (1 << k); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        QuantitySet s;
        for (int q = 1; q <= k; ++q) {
          if (mask & (1 << (q - 1))) s.push_back(q);
        }
        for (TieBreaking tie :
             {TieBreaking::FavorHighest(), TieBreaking::FavorLowest()}) {
          const FixedPriceMechanism m(p, s, k, tie);
          const auto found = SearchCounterexample(m, kInc);
          ASSERT_TRUE(found.has_value()) << "k=" << k << " p=" << p
                                         << " mask=" << mask;
          EXPECT_TRUE(
              Reverify(MechanismUnderTest::FromFixedPrice(m, kInc), *found));
        }
      }
    }
  }
}

TEST(SearchCounterexampleTest, BuyerJumpAgainstNearPriceSeller) {
  // q = 1, q' = 2, p = 1, eps = p / 8: the buyer only values the second unit,
  // the seller only wants to sell one. Trading one unit costs the buyer.
  const Money p = 1.0;
  const Money eps = p / 8;
  const std::pair<Quantity, Money> jump[] = {{2, 2 * p + eps}};
  const Valuation v = JumpAt(2, jump, DefaultSlowRate(p));
  const Valuation w = NearPrice(2, p, eps, 1, Role::kSeller);
  const FixedPriceMechanism m(p, {1, 2}, 2);
  const MechanismUnderTest mut = MechanismUnderTest::FromFixedPrice(m, kInc);
  const Profile profile[] = {{v, w}};
  const std::vector<Violation> found = CheckIrSbb(mut, profile);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].kind, ViolationKind::kIrBuyer);
  EXPECT_GT(found[0].delta, 0.0);
}

TEST(ViolationKindTest, Strings) {
  EXPECT_EQ(ToString(ViolationKind::kDsicSeller), "DSIC_seller");
  EXPECT_EQ(ParseViolationKind("IR_buyer"), ViolationKind::kIrBuyer);
  EXPECT_THROW(ParseViolationKind("WBB"), std::invalid_argument);
}

}  // namespace
}  // namespace mbt
