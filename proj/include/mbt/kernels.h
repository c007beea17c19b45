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

// Batched per-trial inner loops for Monte Carlo welfare estimation.
//
// Each kernel has a scalar reference version and an AVX2 version; the
// public entry points dispatch on the CPU at runtime. Lanes run across
// trials and every trial is accumulated in the same order in both versions,
// so results are bit-identical between them.
//
// Layout is quantity-major: the entry for quantity q (1-based) of trial t
// lives at [(q - 1) * n + t].

#ifndef MBT_KERNELS_H_
#define MBT_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mbt::kernels {

enum class SimdLevel { kScalar, kAvx2 };

std::string_view ToString(SimdLevel level);

// Best level supported by this CPU and build.
SimdLevel DetectedLevel();
// Level used by the dispatching entry points.
SimdLevel ActiveLevel();
// Overrides the active level (clamped to DetectedLevel()). Not thread-safe;
// meant for tests and benchmarks.
void SetActiveLevel(SimdLevel level);

struct TrialBlock {
  int k = 0;
  std::size_t n = 0;
  const double* buyer_marginals = nullptr;   // v^(q), non-increasing in q
  const double* seller_marginals = nullptr;  // w~(q), non-decreasing in q
  const double* prices = nullptr;            // unit price of each trial
};

// Per trial:
//   opt = sum_q w~(q) + sum_q max(0, v^(q) - w~(q))
//   sw  = sum_q w~(q) + sum_q [v^(q) >= p && w~(q) <= p] (v^(q) - w~(q))
// i.e. welfare of the efficient trade and of the unit-schedule fixed price
// mechanism. With accept_ties == false the comparisons are strict
// (favor-lowest tie-breaking).
void WelfareBatch(const TrialBlock& block, bool accept_ties, double* opt,
                  double* sw);

// counts[t] = #{q : marginals(q, t) <= prices[t]}.
void CountAtMost(int k, std::size_t n, const double* marginals,
                 const double* prices, std::int32_t* counts);

namespace scalar {
void WelfareBatch(const TrialBlock& block, bool accept_ties, double* opt,
                  double* sw);
void CountAtMost(int k, std::size_t n, const double* marginals,
                 const double* prices, std::int32_t* counts);
}  // namespace scalar

namespace avx2 {
// Only callable when DetectedLevel() == kAvx2.
void WelfareBatch(const TrialBlock& block, bool accept_ties, double* opt,
                  double* sw);
void CountAtMost(int k, std::size_t n, const double* marginals,
                 const double* prices, std::int32_t* counts);
}  // namespace avx2

}  // namespace mbt::kernels

#endif  // MBT_KERNELS_H_
