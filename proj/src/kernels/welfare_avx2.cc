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

// Built with -mavx2; only reached through the dispatcher after a CPU check.

#include "welfare_scalar_inl.h"
#include "mbt/kernels.h"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>
#endif

namespace mbt::kernels::avx2 {

#if defined(__x86_64__) && defined(__AVX2__)

void WelfareBatch(const TrialBlock& block, bool accept_ties, double* opt,
                  double* sw) {
  const std::size_t n = block.n;
  const std::size_t vec_end = n - n % 4;
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t t = 0; t < vec_end; t += 4) {
    const __m256d p = _mm256_loadu_pd(block.prices + t);
    __m256d endowment = zero;
    for (int q = 0; q < block.k; ++q) {
      endowment = _mm256_add_pd(
          endowment, _mm256_loadu_pd(block.seller_marginals + q * n + t));
    }
    __m256d best = endowment;
    __m256d traded = endowment;
    for (int q = 0; q < block.k; ++q) {
      const __m256d vb = _mm256_loadu_pd(block.buyer_marginals + q * n + t);
      const __m256d ws = _mm256_loadu_pd(block.seller_marginals + q * n + t);
      const __m256d gain = _mm256_sub_pd(vb, ws);
      const __m256d positive = _mm256_cmp_pd(gain, zero, _CMP_GT_OQ);
      best = _mm256_add_pd(best, _mm256_and_pd(positive, gain));
      // Comparison predicates are immediates, so branch on the policy.
      __m256d trades;
      if (accept_ties) {
        trades = _mm256_and_pd(_mm256_cmp_pd(vb, p, _CMP_GE_OQ),
                               _mm256_cmp_pd(ws, p, _CMP_LE_OQ));
      } else {
        trades = _mm256_and_pd(_mm256_cmp_pd(vb, p, _CMP_GT_OQ),
                               _mm256_cmp_pd(ws, p, _CMP_LT_OQ));
      }
      traded = _mm256_add_pd(traded, _mm256_and_pd(trades, gain));
    }
    _mm256_storeu_pd(opt + t, best);
    _mm256_storeu_pd(sw + t, traded);
  }
  WelfareRange(block, accept_ties, vec_end, n, opt, sw);
}

void CountAtMost(int k, std::size_t n, const double* marginals,
                 const double* prices, std::int32_t* counts) {
  const std::size_t vec_end = n - n % 4;
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t t = 0; t < vec_end; t += 4) {
    const __m256d p = _mm256_loadu_pd(prices + t);
    __m256d c = _mm256_setzero_pd();
    for (int q = 0; q < k; ++q) {
      const __m256d m = _mm256_loadu_pd(marginals + q * n + t);
      c = _mm256_add_pd(c, _mm256_and_pd(_mm256_cmp_pd(m, p, _CMP_LE_OQ), one));
    }
    _mm_storeu_si128(reinterpret_cast<__m128i*>(counts + t),
                     _mm256_cvtpd_epi32(c));
  }
  CountAtMostRange(k, n, marginals, prices, vec_end, n, counts);
}

#else

// Non-x86 builds never select this level; keep the symbols for linking.
void WelfareBatch(const TrialBlock& block, bool accept_ties, double* opt,
                  double* sw) {
  WelfareRange(block, accept_ties, 0, block.n, opt, sw);
}

void CountAtMost(int k, std::size_t n, const double* marginals,
                 const double* prices, std::int32_t* counts) {
  CountAtMostRange(k, n, marginals, prices, 0, n, counts);
}

#endif

}  // namespace mbt::kernels::avx2
