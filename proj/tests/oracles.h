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

// Test-side reference computations. None of these call into the library's
// mechanism or welfare code; they work from raw value vectors.

#ifndef MBT_TESTS_ORACLES_H_
#define MBT_TESTS_ORACLES_H_

#include <functional>
#include <vector>

namespace mbt::oracle {

struct Trade {
  int q = 0;
  double payment = 0.0;  // buyer to seller
};

// Direct-form fixed price outcome computed from utilities over S and 0.
// `high` picks the largest maximizer on each side (else the smallest); the
// common quantity is the largest / smallest member of the intersection.
Trade FixedPrice(double p, const std::vector<int>& S,
                 const std::vector<double>& v, const std::vector<double>& w,
                 bool high);

// max_q v(q) + w(k - q).
double BestWelfare(const std::vector<double>& v, const std::vector<double>& w);
// Largest q attaining BestWelfare.
int BestQuantity(const std::vector<double>& v, const std::vector<double>& w);

// E[U_(q) 1{U_(q) <= t}] for the q-th smallest of k uniforms on [lo, hi],
// through the incomplete beta identity with integer parameters.
double UniformTruncatedOrderMean(int k, int q, double lo, double hi, double t);

// The same quantity for exponential(rate), by Simpson's rule on the order
// statistic density.
double ExponentialTruncatedOrderMean(int k, int q, double rate, double t);

// Expected welfare of trading unit by unit at price p against a fixed
// concave buyer with k i.i.d. seller marginals, by Simpson's rule on the
// joint law of (X_(q)). `cdf`/`pdf` describe the base on [lo, hi].
double UnitPriceWelfare(const std::vector<double>& buyer_marginals,
                        const std::function<double(double)>& pdf,
                        const std::function<double(double)>& cdf, double lo,
                        double hi, double p);

// Expected welfare of the efficient trade in the same setting.
double EfficientWelfare(const std::vector<double>& buyer_marginals,
                        const std::function<double(double)>& pdf,
                        const std::function<double(double)>& cdf, double lo,
                        double hi);

// sup_x |F_n(x) - F(x)| of a sample against a continuous CDF.
double KsDistance(std::vector<double> sample,
                  const std::function<double(double)>& cdf);

}  // namespace mbt::oracle

#endif  // MBT_TESTS_ORACLES_H_
