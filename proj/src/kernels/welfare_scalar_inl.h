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

// Scalar loops over a trial range, shared by the reference kernels and the
// tails of the vector kernels. Internal linkage keeps the copy compiled
// with vector flags from being picked by the linker for scalar callers.

#ifndef MBT_KERNELS_WELFARE_SCALAR_INL_H_
#define MBT_KERNELS_WELFARE_SCALAR_INL_H_

#include <cstddef>
#include <cstdint>

#include "mbt/kernels.h"

namespace mbt::kernels {
namespace {

void WelfareRange(const TrialBlock& block, bool accept_ties, std::size_t begin,
                  std::size_t end, double* opt, double* sw) {
  const std::size_t n = block.n;
  for (std::size_t t = begin; t < end; ++t) {
    const double p = block.prices[t];
    double endowment = 0.0;
    for (int q = 0; q < block.k; ++q) {
      endowment += block.seller_marginals[q * n + t];
    }
    double best = endowment;
    double traded = endowment;
    for (int q = 0; q < block.k; ++q) {
      const double vb = block.buyer_marginals[q * n + t];
      const double ws = block.seller_marginals[q * n + t];
      const double gain = vb - ws;
      best += gain > 0.0 ? gain : 0.0;
      const bool trades =
          accept_ties ? (vb >= p && ws <= p) : (vb > p && ws < p);
      traded += trades ? gain : 0.0;
    }
    opt[t] = best;
    sw[t] = traded;
  }
}

void CountAtMostRange(int k, std::size_t n, const double* marginals,
                      const double* prices, std::size_t begin, std::size_t end,
                      std::int32_t* counts) {
  for (std::size_t t = begin; t < end; ++t) {
    std::int32_t c = 0;
    for (int q = 0; q < k; ++q) c += marginals[q * n + t] <= prices[t] ? 1 : 0;
    counts[t] = c;
  }
}

}  // namespace
}  // namespace mbt::kernels

#endif  // MBT_KERNELS_WELFARE_SCALAR_INL_H_
