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

#ifndef MBT_QUADRATURE_H_
#define MBT_QUADRATURE_H_

#include <functional>
#include <span>
#include <vector>

namespace mbt {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point rule, computed once per n by Newton iteration on P_n.
const GaussLegendreRule& GaussLegendre(int n);

// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
double Integrate(const std::function<double(double)>& f, double a, double b,
                 int nodes, int panels = 1);

// Same, but also splitting at each breakpoint strictly inside (a, b).
double IntegratePiecewise(const std::function<double(double)>& f, double a,
                          double b, std::span<const double> breakpoints,
                          int nodes, int panels = 1);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace mbt

#endif  // MBT_QUADRATURE_H_
