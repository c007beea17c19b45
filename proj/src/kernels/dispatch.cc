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

namespace mbt::kernels {

namespace {

SimdLevel Detect() {
#if defined(__x86_64__) && defined(MBT_HAVE_AVX2_KERNELS)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return SimdLevel::kAvx2;
#endif
  return SimdLevel::kScalar;
}

SimdLevel& Active() {
  static SimdLevel level = DetectedLevel();
  return level;
}

}  // namespace

std::string_view ToString(SimdLevel level) {
  return level == SimdLevel::kAvx2 ? "avx2" : "scalar";
}

SimdLevel DetectedLevel() {
  static const SimdLevel detected = Detect();
  return detected;
}

SimdLevel ActiveLevel() { return Active(); }

void SetActiveLevel(SimdLevel level) {
  Active() = DetectedLevel() == SimdLevel::kAvx2 ? level : SimdLevel::kScalar;
}

void WelfareBatch(const TrialBlock& block, bool accept_ties, double* opt,
                  double* sw) {
  if (Active() == SimdLevel::kAvx2) {
    avx2::WelfareBatch(block, accept_ties, opt, sw);
  } else {
    scalar::WelfareBatch(block, accept_ties, opt, sw);
  }
}

void CountAtMost(int k, std::size_t n, const double* marginals,
                 const double* prices, std::int32_t* counts) {
  if (Active() == SimdLevel::kAvx2) {
    avx2::CountAtMost(k, n, marginals, prices, counts);
  } else {
    scalar::CountAtMost(k, n, marginals, prices, counts);
  }
}

}  // namespace mbt::kernels
