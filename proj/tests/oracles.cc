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

#include "oracles.h"

#include <algorithm>
#include <cmath>

namespace mbt::oracle {

namespace {

std::vector<int> Maximizers(const std::vector<double>& utility,
                            const std::vector<int>& options) {
  double best = -INFINITY;
  for (int q : options) best = std::max(best, utility[q]);
  std::vector<int> out;
  for (int q : options) {
    if (utility[q] == best) out.push_back(q);
  }
  return out;
}

double Choose(int n, int j) {
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c = c * (n - j + i) / i;
  return c;
}

// I_x(a, b) for positive integers a, b.
double IncompleteBeta(int a, int b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const int n = a + b - 1;
  double total = 0.0;
  for (int j = a; j <= n; ++j) {
    total += Choose(n, j) * std::pow(x, j) * std::pow(1.0 - x, n - j);
  }
  return total;
}

double Simpson(const std::function<double(double)>& f, double a, double b,
               int intervals) {
  if (!(b > a)) return 0.0;
  if (intervals % 2 == 1) ++intervals;
  const double h = (b - a) / intervals;
  double total = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    total += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  }
  return total * h / 3.0;
}

double OrderDensity(int k, int q, double F, double f) {
  return k * Choose(k - 1, q - 1) * std::pow(F, q - 1) *
         std::pow(1.0 - F, k - q) * f;
}

}  // namespace

Trade FixedPrice(double p, const std::vector<int>& S,
                 const std::vector<double>& v, const std::vector<double>& w,
                 bool high) {
  const int k = static_cast<int>(v.size()) - 1;
  std::vector<int> options{0};
  options.insert(options.end(), S.begin(), S.end());
  std::vector<double> ub(k + 1, -INFINITY);
  std::vector<double> us(k + 1, -INFINITY);
  for (int q : options) {
    ub[q] = v[q] - q * p;
    us[q] = w[k - q] + q * p;
  }
  const std::vector<int> tb = Maximizers(ub, options);
  const std::vector<int> ts = Maximizers(us, options);
  // Both agents pick one quantity under these tie rules.
  const int b = high ? tb.back() : tb.front();
  const int s = high ? ts.back() : ts.front();
  const int q = std::min(b, s);
  return Trade{q, q * p};
}

double BestWelfare(const std::vector<double>& v, const std::vector<double>& w) {
  const int k = static_cast<int>(v.size()) - 1;
  double best = -INFINITY;
  for (int q = 0; q <= k; ++q) best = std::max(best, v[q] + w[k - q]);
  return best;
}

int BestQuantity(const std::vector<double>& v, const std::vector<double>& w) {
  const int k = static_cast<int>(v.size()) - 1;
  const double best = BestWelfare(v, w);
  int arg = 0;
  for (int q = 0; q <= k; ++q) {
    if (v[q] + w[k - q] == best) arg = q;
  }
  return arg;
}

double UniformTruncatedOrderMean(int k, int q, double lo, double hi,
                                 double t) {
  const double s = std::clamp((t - lo) / (hi - lo), 0.0, 1.0);
  const double below = IncompleteBeta(q, k - q + 1, s);
  const double scaled = q / (k + 1.0) * IncompleteBeta(q + 1, k - q + 1, s);
  return lo * below + (hi - lo) * scaled;
}

double ExponentialTruncatedOrderMean(int k, int q, double rate, double t) {
  const double upper = std::min(t, 60.0 / rate);
  auto integrand = [&](double x) {
    const double F = -std::expm1(-rate * x);
    return x * OrderDensity(k, q, F, rate * std::exp(-rate * x));
  };
  return Simpson(integrand, 0.0, upper, 200000);
}

double UnitPriceWelfare(const std::vector<double>& buyer_marginals,
                        const std::function<double(double)>& pdf,
                        const std::function<double(double)>& cdf, double lo,
                        double hi, double p) {
  const int k = static_cast<int>(buyer_marginals.size());
  const double mean =
      Simpson([&](double x) { return x * pdf(x); }, lo, hi, 200000);
  double total = k * mean;
  const double upper = std::min(p, hi);
  for (int q = 1; q <= k; ++q) {
    const double b = buyer_marginals[q - 1];
    if (b < p) break;
    total += Simpson(
        [&](double x) { return (b - x) * OrderDensity(k, q, cdf(x), pdf(x)); },
        lo, upper, 200000);
  }
  return total;
}

double EfficientWelfare(const std::vector<double>& buyer_marginals,
                        const std::function<double(double)>& pdf,
                        const std::function<double(double)>& cdf, double lo,
                        double hi) {
  const int k = static_cast<int>(buyer_marginals.size());
  double total =
      k * Simpson([&](double x) { return x * pdf(x); }, lo, hi, 200000);
  for (int q = 1; q <= k; ++q) {
    const double b = buyer_marginals[q - 1];
    total += Simpson(
        [&](double x) { return (b - x) * OrderDensity(k, q, cdf(x), pdf(x)); },
        lo, std::min(b, hi), 200000);
  }
  return total;
}

double KsDistance(std::vector<double> sample,
                  const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = cdf(sample[i]);
    d = std::max(d, std::max(F - i / n, (i + 1) / n - F));
  }
  return d;
}

}  // namespace mbt::oracle
