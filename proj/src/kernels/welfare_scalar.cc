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

#include "welfare_scalar_inl.h"
#include "mbt/kernels.h"

namespace mbt::kernels::scalar {

void WelfareBatch(const TrialBlock& block, bool accept_ties, double* opt,
                  double* sw) {
  WelfareRange(block, accept_ties, 0, block.n, opt, sw);
}

void CountAtMost(int k, std::size_t n, const double* marginals,
                 const double* prices, std::int32_t* counts) {
  CountAtMostRange(k, n, marginals, prices, 0, n, counts);
}

}  // namespace mbt::kernels::scalar
