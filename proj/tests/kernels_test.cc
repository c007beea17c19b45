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

#include "mbt/kernels.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <vector>

#include "mbt/mechanism.h"
#include "mbt/rng.h"
#include "mbt/valuation.h"
#include "mbt/welfare.h"

namespace mbt::kernels {
namespace {

struct Batch {
  int k;
  std::size_t n;
  std::vector<double> buyer;
  std::vector<double> seller;
  std::vector<double> prices;

  TrialBlock block() const {
    return {k, n, buyer.data(), seller.data(), prices.data()};
  }
};

// Marginals on a quarter grid so ties with the price are common.
Batch RandomBatch(int k, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto grid = [&] { return 0.25 * static_cast<int>(rng.Uniform01() * 24); };
  Batch b{k, n, std::vector<double>(k * n), std::vector<double>(k * n),
          std::vector<double>(n)};
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<double> vb(k);
    std::vector<double> ws(k);
    for (int q = 0; q < k; ++q) {
      vb[q] = grid() + 0.25;
      ws[q] = grid() + 0.25;
    }
    std::sort(vb.begin(), vb.end(), std::greater<>());
    std::sort(ws.begin(), ws.end());
    for (int q = 0; q < k; ++q) {
      b.buyer[q * n + t] = vb[q];
      b.seller[q * n + t] = ws[q];
    }
    b.prices[t] = t % 17 == 0 ? INFINITY : grid();
  }
  return b;
}

bool SameBits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(KernelsTest, DetectionAndOverride) {
  const SimdLevel detected = DetectedLevel();
  SetActiveLevel(SimdLevel::kScalar);
  EXPECT_EQ(ActiveLevel(), SimdLevel::kScalar);
  SetActiveLevel(SimdLevel::kAvx2);
  EXPECT_EQ(ActiveLevel(), detected);
  EXPECT_EQ(ToString(SimdLevel::kAvx2), "avx2");
}

TEST(KernelsTest, WelfareBatchAvx2MatchesScalarBitForBit) {
  if (DetectedLevel() != SimdLevel::kAvx2) GTEST_SKIP() << "no AVX2";
  for (int k : {1, 2, 3, 5, 10}) {
    for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
      const Batch b = RandomBatch(k, n, 31 * k + n);
      for (bool ties : {true, false}) {
        std::vector<double> opt_s(n), sw_s(n), opt_v(n), sw_v(n);
        scalar::WelfareBatch(b.block(), ties, opt_s.data(), sw_s.data());
        avx2::WelfareBatch(b.block(), ties, opt_v.data(), sw_v.data());
        EXPECT_TRUE(SameBits(opt_s, opt_v)) << k << " " << n;
        EXPECT_TRUE(SameBits(sw_s, sw_v)) << k << " " << n;
      }
    }
  }
}

TEST(KernelsTest, CountAtMostAvx2MatchesScalar) {
  if (DetectedLevel() != SimdLevel::kAvx2) GTEST_SKIP() << "no AVX2";
  for (int k : {1, 4, 9}) {
    for (std::size_t n : {1u, 5u, 4096u}) {
      const Batch b = RandomBatch(k, n, 7 * k + n);
      std::vector<std::int32_t> a(n), c(n);
      scalar::CountAtMost(k, n, b.seller.data(), b.prices.data(), a.data());
      avx2::CountAtMost(k, n, b.seller.data(), b.prices.data(), c.data());
      EXPECT_EQ(a, c);
    }
  }
}

// The scalar kernel against the mechanism run trial by trial.
TEST(KernelsTest, ScalarMatchesMechanism) {
  const int k = 4;
  const std::size_t n = 500;
  const Batch b = RandomBatch(k, n, 5);
  for (bool ties : {true, false}) {
    std::vector<double> opt(n), sw(n);
    scalar::WelfareBatch(b.block(), ties, opt.data(), sw.data());
    std::vector<std::int32_t> counts(n);
    scalar::CountAtMost(k, n, b.seller.data(), b.prices.data(), counts.data());
    for (std::size_t t = 0; t < n; ++t) {
      MarginalProfile vb{Role::kBuyer, {}};
      MarginalProfile ws{Role::kSeller, {}};
      int expected_count = 0;
      for (int q = 0; q < k; ++q) {
        vb.deltas.push_back(b.buyer[q * n + t]);
        ws.deltas.push_back(b.seller[q * n + t]);
        expected_count += b.seller[q * n + t] <= b.prices[t];
      }
      EXPECT_EQ(counts[t], expected_count);
      const Valuation v = FromMarginals(vb);
      const Valuation w = FromMarginals(ws);
      EXPECT_EQ(opt[t], ProfileOpt(v, w));
      Quantity q = 0;
      if (std::isfinite(b.prices[t])) {
        q = FixedPriceMechanism::UnitSchedule(
                b.prices[t], k,
                ties ? TieBreaking::FavorHighest() : TieBreaking::FavorLowest())
                .Run(v, w)
                .buyer_units;
      }
      EXPECT_EQ(sw[t], ProfileWelfare(v, w, q)) << t;
    }
  }
}

TEST(KernelsTest, DispatchUsesActiveLevel) {
  const Batch b = RandomBatch(3, 100, 9);
  std::vector<double> opt1(100), sw1(100), opt2(100), sw2(100);
  SetActiveLevel(SimdLevel::kScalar);
  WelfareBatch(b.block(), true, opt1.data(), sw1.data());
  SetActiveLevel(SimdLevel::kAvx2);
  WelfareBatch(b.block(), true, opt2.data(), sw2.data());
  EXPECT_TRUE(SameBits(opt1, opt2));
  EXPECT_TRUE(SameBits(sw1, sw2));
}

}  // namespace
}  // namespace mbt::kernels
