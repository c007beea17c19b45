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

#include "mbt/welfare.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include "mbt/kernels.h"
#include "mbt/quadrature.h"

namespace mbt {

Money Gft(const Valuation& v, const Valuation& w, Quantity q) {
  const int k = v.k();
  if (w.k() != k || q < 1 || q > k) {
    throw std::invalid_argument("gft: quantity outside [1, k] or k mismatch");
  }
  const Money buyer = v(q) - v(q - 1);
  const Money seller = w(k - q + 1) - w(k - q);
  return std::max(0.0, buyer - seller);
}

namespace {

bool IsSubmodularPair(const Valuation& v, const Valuation& w) {
  return Validate(v, ValuationClass::kIncreasingSubmodular, Strictness::kWeak) &&
         Validate(w, ValuationClass::kIncreasingSubmodular, Strictness::kWeak);
}

}  // namespace

Quantity EfficientQuantity(const Valuation& v, const Valuation& w) {
  if (v.k() != w.k()) throw std::invalid_argument("mismatched k");
  if (!IsSubmodularPair(v, w)) {
    throw std::invalid_argument(
        "efficient quantity needs increasing submodular valuations");
  }
  const MarginalProfile buyer = MarginalProfileOf(v, Role::kBuyer);
  const MarginalProfile seller = MarginalProfileOf(w, Role::kSeller);
  Quantity best = 0;
  for (Quantity q = 1; q <= v.k(); ++q) {
    if (buyer.at(q) >= seller.at(q)) best = q;
  }
  return best;
}

Money ProfileWelfare(const Valuation& v, const Valuation& w, Quantity q) {
  return v(q) + w(w.k() - q);
}

Money ProfileOpt(const Valuation& v, const Valuation& w) {
  const int k = v.k();
  if (w.k() != k) throw std::invalid_argument("mismatched k");
  if (IsSubmodularPair(v, w)) {
    Money total = w(k);
    for (Quantity q = 1; q <= k; ++q) total += Gft(v, w, q);
    return total;
  }
  Money best = ProfileWelfare(v, w, 0);
  for (Quantity q = 1; q <= k; ++q) best = std::max(best, ProfileWelfare(v, w, q));
  return best;
}

std::string_view ToString(EvalMethod method) {
  switch (method) {
    case EvalMethod::kExact:
      return "exact";
    case EvalMethod::kQuadrature:
      return "quadrature";
    case EvalMethod::kMonteCarlo:
      return "monte_carlo";
  }
  return {};
}

EvalMethod ParseEvalMethod(std::string_view text) {
  if (text == "exact") return EvalMethod::kExact;
  if (text == "quadrature") return EvalMethod::kQuadrature;
  if (text == "mc" || text == "monte_carlo") return EvalMethod::kMonteCarlo;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

std::string MechanismLabel(const EvaluatedMechanism& mech) {
  if (std::holds_alternative<GrqmRule>(mech)) return "grqm";
  const auto& m = std::get<FixedPriceMechanism>(mech);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), m.price());
  std::string label = "fixed_price(p=" + std::string(buf, res.ptr) + ";S=";
  for (std::size_t i = 0; i < m.tradeable().size(); ++i) {
    if (i > 0) label += " ";
    label += std::to_string(m.tradeable()[i]);
  }
  return label + ";" + std::string(ToString(m.tie().policy())) + ")";
}

// ---------------------------------------------------------------------------
// Order statistics of a sorted-iid seller.

namespace {

// Pr[X_(q) <= x] for q = 1..k at once (index q - 1), as binomial tails.
std::vector<double> OrderStatisticCdfs(int k, double cdf_value) {
  std::vector<double> tails(k, 0.0);
  if (cdf_value <= 0.0) return tails;
  if (cdf_value >= 1.0) {
    std::fill(tails.begin(), tails.end(), 1.0);
    return tails;
  }
  const double log_f = std::log(cdf_value);
  const double log_1mf = std::log1p(-cdf_value);
  const double log_k_fact = std::lgamma(k + 1.0);
  double tail = 0.0;
  for (int j = k; j >= 1; --j) {
    tail += std::exp(log_k_fact - std::lgamma(j + 1.0) -
                     std::lgamma(k - j + 1.0) + j * log_f + (k - j) * log_1mf);
    tails[j - 1] = std::min(1.0, tail);
  }
  return tails;
}

// Beyond rate * t = 60 the exponential tail contributes below 1e-20 per unit
// of t, so the untruncated means are used.
constexpr double kExponentialTailCut = 60.0;

// E[X_(q) 1{X_(q) <= t}] for q = 1..k, as t G_q(t) - integral of G_q.
std::vector<double> TruncatedMeans(const BaseDistribution& base, int k,
                                   double t) {
  std::vector<double> means(k, 0.0);
  const double lo = base.SupportMin();
  if (!(t > lo)) return means;
  const bool exponential = base.kind() == BaseDistribution::Kind::kExponential;
  if (exponential && t * base.rate() > kExponentialTailCut) {
    // Exponential spacings: X_(q) = sum_{j<q} E_j / (rate (k - j)).
    double mean = 0.0;
    for (int q = 0; q < k; ++q) {
      mean += 1.0 / (base.rate() * (k - q));
      means[q] = mean;
    }
    return means;
  }
  const double upper = std::min(t, base.SupportMax());
  std::vector<double> cuts{lo};
  for (double kink : base.Kinks()) {
    if (kink > lo && kink < upper) cuts.push_back(kink);
  }
  cuts.push_back(upper);
  const int panels =
      exponential
          ? std::max(8, static_cast<int>(std::ceil((upper - lo) * base.rate())))
          : 8;
  const GaussLegendreRule& rule = GaussLegendre(24);
  std::vector<CompensatedSum> areas(k);
  for (std::size_t c = 1; c < cuts.size(); ++c) {
    const double width = (cuts[c] - cuts[c - 1]) / panels;
    for (int panel = 0; panel < panels; ++panel) {
      const double half = 0.5 * width;
      const double mid = cuts[c - 1] + panel * width + half;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const std::vector<double> g =
            OrderStatisticCdfs(k, base.Cdf(mid + half * rule.nodes[i]));
        for (int q = 0; q < k; ++q) areas[q].Add(half * rule.weights[i] * g[q]);
      }
    }
  }
  const std::vector<double> at_upper = OrderStatisticCdfs(k, base.Cdf(upper));
  for (int q = 0; q < k; ++q) {
    means[q] = upper * at_upper[q] - areas[q].value();
  }
  return means;
}

}  // namespace

double OrderStatisticCdf(int k, int q, double cdf_value) {
  if (q < 1 || q > k) throw std::invalid_argument("order index outside [1, k]");
  return OrderStatisticCdfs(k, cdf_value)[q - 1];
}

double TruncatedOrderStatisticMean(const BaseDistribution& base, int k, int q,
                                   double t) {
  if (q < 1 || q > k) throw std::invalid_argument("order index outside [1, k]");
  return TruncatedMeans(base, k, t)[q - 1];
}

namespace {

double SellerEndowmentMean(const SortedIidPrior& seller) {
  return seller.k * seller.base.Mean();
}

}  // namespace

double SortedIidUnitScheduleWelfare(const Valuation& v,
                                    const SortedIidPrior& seller, Money p,
                                    bool accept_ties) {
  const int k = seller.k;
  if (v.k() != k) throw std::invalid_argument("mismatched k");
  const MarginalProfile buyer = MarginalProfileOf(v, Role::kBuyer);
  CompensatedSum total;
  total.Add(SellerEndowmentMean(seller));
  if (!std::isfinite(p)) return total.value();
  const std::vector<double> below = OrderStatisticCdfs(k, seller.base.Cdf(p));
  const std::vector<double> truncated = TruncatedMeans(seller.base, k, p);
  for (Quantity q = 1; q <= k; ++q) {
    const bool buyer_accepts = accept_ties ? buyer.at(q) >= p : buyer.at(q) > p;
    if (!buyer_accepts) break;
    total.Add(buyer.at(q) * below[q - 1]);
    total.Add(-truncated[q - 1]);
  }
  return total.value();
}

double SortedIidOpt(const Valuation& v, const SortedIidPrior& seller) {
  const int k = seller.k;
  if (v.k() != k) throw std::invalid_argument("mismatched k");
  const MarginalProfile buyer = MarginalProfileOf(v, Role::kBuyer);
  CompensatedSum total;
  total.Add(SellerEndowmentMean(seller));
  for (Quantity q = 1; q <= k; ++q) {
    const Money b = buyer.at(q);
    total.Add(b * OrderStatisticCdfs(k, seller.base.Cdf(b))[q - 1]);
    total.Add(-TruncatedMeans(seller.base, k, b)[q - 1]);
  }
  return total.value();
}

// ---------------------------------------------------------------------------

namespace {

struct PriceSegment {
  double weight;  // probability under the ln(e x) law
  Money p;
};

// p(x) of a discrete pricing prior is a step function of x; returns its
// pieces over [1/e, 1].
std::vector<PriceSegment> DiscreteGrqmSegments(const DiscretePrior& pricing) {
  const int k = pricing.k();
  std::map<Money, double> jumps;
  for (const Atom& atom : pricing.support()) {
    for (Money d : MarginalProfileOf(atom.valuation, Role::kSeller).deltas) {
      jumps[d] += atom.prob;
    }
  }
  std::vector<PriceSegment> segments;
  const double x_min = std::exp(-1.0);
  double mass_before = 0.0;
  for (const auto& [value, jump] : jumps) {
    const double mass = mass_before + jump;
    const double lo = std::max(x_min, mass_before / k);
    const double hi = std::min(1.0, mass / k);
    if (hi > lo) segments.push_back({std::log(hi) - std::log(lo), value});
    mass_before = mass;
  }
  // Rounding can leave the top of the law unassigned; it belongs to the
  // largest marginal.
  const double covered = [&] {
    double s = 0.0;
    for (const auto& seg : segments) s += seg.weight;
    return s;
  }();
  if (covered < 1.0 && !jumps.empty()) {
    segments.push_back({1.0 - covered, jumps.rbegin()->first});
  }
  return segments;
}

void RequireSellerRoles(const Prior& f, const Prior& g) {
  if (const auto* s = std::get_if<SortedIidPrior>(&f);
      s != nullptr && s->role != Role::kBuyer) {
    throw std::invalid_argument("buyer prior has the seller role");
  }
  if (const auto* s = std::get_if<SortedIidPrior>(&g);
      s != nullptr && s->role != Role::kSeller) {
    throw std::invalid_argument("seller prior has the buyer role");
  }
  if (PriorK(f) != PriorK(g)) {
    throw std::invalid_argument("buyer and seller priors disagree on k");
  }
}

// --- exact -----------------------------------------------------------------

double ExactFixedPriceSw(const FixedPriceMechanism& m, const DiscretePrior& f,
                         const DiscretePrior& g) {
  CompensatedSum total;
  for (const Atom& b : f.support()) {
    for (const Atom& s : g.support()) {
      const Outcome o = m.Run(b.valuation, s.valuation);
      total.Add(b.prob * s.prob *
                ProfileWelfare(b.valuation, s.valuation, o.buyer_units));
    }
  }
  return total.value();
}

double ExactOpt(const DiscretePrior& f, const DiscretePrior& g) {
  CompensatedSum total;
  for (const Atom& b : f.support()) {
    for (const Atom& s : g.support()) {
      total.Add(b.prob * s.prob * ProfileOpt(b.valuation, s.valuation));
    }
  }
  return total.value();
}

double ExactSw(const EvaluatedMechanism& mech, const DiscretePrior& f,
               const DiscretePrior& g) {
  if (const auto* m = std::get_if<FixedPriceMechanism>(&mech)) {
    return ExactFixedPriceSw(*m, f, g);
  }
  const auto& rule = std::get<GrqmRule>(mech);
  const auto* pricing = std::get_if<DiscretePrior>(&rule.pricing_prior);
  if (pricing == nullptr) {
    throw UnsupportedModeError(
        "exact mode needs a discrete pricing prior for grqm; use quadrature");
  }
  CompensatedSum total;
  for (const PriceSegment& seg : DiscreteGrqmSegments(*pricing)) {
    total.Add(seg.weight *
              ExactFixedPriceSw(FixedPriceMechanism::UnitSchedule(seg.p, f.k()),
                                f, g));
  }
  return total.value();
}

// --- quadrature --------------------------------------------------------------

const DiscretePrior& RequireDiscreteSubmodularBuyer(const Prior& f) {
  const auto* buyer = std::get_if<DiscretePrior>(&f);
  if (buyer == nullptr ||
      buyer->valuation_class() != ValuationClass::kIncreasingSubmodular) {
    throw UnsupportedModeError(
        "quadrature needs a discrete increasing_submodular buyer prior");
  }
  return *buyer;
}

double QuadratureOpt(const DiscretePrior& f, const SortedIidPrior& g) {
  CompensatedSum total;
  for (const Atom& b : f.support()) {
    total.Add(b.prob * SortedIidOpt(b.valuation, g));
  }
  return total.value();
}

double QuadratureSwAtPrice(const DiscretePrior& f, const SortedIidPrior& g,
                           Money p, bool accept_ties) {
  CompensatedSum total;
  for (const Atom& b : f.support()) {
    total.Add(b.prob *
              SortedIidUnitScheduleWelfare(b.valuation, g, p, accept_ties));
  }
  return total.value();
}

double QuadratureSw(const EvaluatedMechanism& mech, const DiscretePrior& f,
                    const SortedIidPrior& g, int nodes) {
  if (const auto* m = std::get_if<FixedPriceMechanism>(&mech)) {
    if (!m->is_unit_schedule() || m->tie().policy() == TiePolicy::kExplicit) {
      throw UnsupportedModeError(
          "quadrature supports unit-schedule mechanisms with favor_highest or "
          "favor_lowest tie-breaking");
    }
    return QuadratureSwAtPrice(f, g, m->price(),
                               m->tie().policy() == TiePolicy::kFavorHighest);
  }
  const auto& rule = std::get<GrqmRule>(mech);
  if (const auto* pricing = std::get_if<DiscretePrior>(&rule.pricing_prior)) {
    CompensatedSum total;
    for (const PriceSegment& seg : DiscreteGrqmSegments(*pricing)) {
      total.Add(seg.weight * QuadratureSwAtPrice(f, g, seg.p, true));
    }
    return total.value();
  }
  const auto& pricing = std::get<SortedIidPrior>(rule.pricing_prior);
  // With u = 1 + ln x uniform on [0, 1], p(x) = F_pricing^{-1}(x). Pieces
  // are split where p(x) crosses a buyer marginal (the buyer's acceptance
  // level jumps there) or a kink of the seller base.
  std::vector<double> breaks;
  auto add_break = [&](Money price) {
    const double x = pricing.base.Cdf(price);
    if (x > std::exp(-1.0) && x < 1.0) breaks.push_back(1.0 + std::log(x));
  };
  for (const Atom& b : f.support()) {
    for (Money d : MarginalProfileOf(b.valuation, Role::kBuyer).deltas) {
      add_break(d);
    }
  }
  for (double kink : g.base.Kinks()) add_break(kink);
  auto integrand = [&](double u) {
    const Money p = pricing.base.Quantile(std::exp(u - 1.0));
    return QuadratureSwAtPrice(f, g, p, true);
  };
  return IntegratePiecewise(integrand, 0.0, 1.0, breaks, nodes, 1);
}

// --- Monte Carlo -------------------------------------------------------------

constexpr std::size_t kBlockTrials = 4096;

struct TrialValues {
  std::vector<double> opt;
  std::vector<double> sw;
};

bool FastPathApplies(const EvaluatedMechanism& mech, const Prior& f,
                     const Prior& g) {
  if (PriorClass(f) != ValuationClass::kIncreasingSubmodular ||
      PriorClass(g) != ValuationClass::kIncreasingSubmodular) {
    return false;
  }
  if (const auto* m = std::get_if<FixedPriceMechanism>(&mech)) {
    return m->is_unit_schedule() && m->tie().policy() != TiePolicy::kExplicit;
  }
  return true;
}

TrialValues SimulateTrials(const EvaluatedMechanism& mech, const Prior& f,
                           const Prior& g, std::int64_t trials,
                           std::uint64_t seed) {
  const int k = PriorK(g);
  const bool fast = FastPathApplies(mech, f, g);
  const auto* fixed = std::get_if<FixedPriceMechanism>(&mech);
  const auto* rule = std::get_if<GrqmRule>(&mech);
  const bool accept_ties =
      fixed == nullptr || fixed->tie().policy() == TiePolicy::kFavorHighest;

  TrialValues out;
  out.opt.resize(trials);
  out.sw.resize(trials);
  std::vector<double> buyer_marginals;
  std::vector<double> seller_marginals;
  std::vector<double> prices;
  for (std::int64_t start = 0, block = 0; start < trials;
       start += kBlockTrials, ++block) {
    const std::size_t n =
        static_cast<std::size_t>(std::min<std::int64_t>(kBlockTrials,
                                                        trials - start));
    Rng rng = Rng::Stream(seed, static_cast<std::uint64_t>(block));
    buyer_marginals.assign(k * n, 0.0);
    seller_marginals.assign(k * n, 0.0);
    prices.assign(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      // Draw order per trial: price quantile, buyer, seller.
      Money p = fixed != nullptr ? fixed->price() : 0.0;
      if (rule != nullptr) {
        const QuantileDraw draw = SampleQuantile(rng);
        p = SolveThresholdPrice(rule->pricing_prior, draw.x * k).p;
      }
      const Valuation v = Sample(f, rng);
      const Valuation w = Sample(g, rng);
      prices[t] = p;
      if (fast) {
        const MarginalProfile vb = MarginalProfileOf(v, Role::kBuyer);
        const MarginalProfile ws = MarginalProfileOf(w, Role::kSeller);
        for (int q = 0; q < k; ++q) {
          buyer_marginals[q * n + t] = vb.deltas[q];
          seller_marginals[q * n + t] = ws.deltas[q];
        }
        continue;
      }
      out.opt[start + t] = ProfileOpt(v, w);
      Quantity traded = 0;
      if (fixed != nullptr) {
        traded = fixed->Run(v, w).buyer_units;
      } else if (std::isfinite(p)) {
        traded = FixedPriceMechanism::UnitSchedule(p, k).Run(v, w).buyer_units;
      }
      out.sw[start + t] = ProfileWelfare(v, w, traded);
    }
    if (fast) {
      kernels::TrialBlock batch{k, n, buyer_marginals.data(),
                                seller_marginals.data(), prices.data()};
      kernels::WelfareBatch(batch, accept_ties, out.opt.data() + start,
                            out.sw.data() + start);
    }
  }
  return out;
}

Estimate MeanAndStdError(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  CompensatedSum sum;
  for (double x : values) sum.Add(x);
  const double mean = sum.value() / n;
  CompensatedSum squares;
  for (double x : values) squares.Add((x - mean) * (x - mean));
  const double variance = values.size() > 1 ? squares.value() / (n - 1.0) : 0.0;
  return Estimate{mean, std::sqrt(variance / n)};
}

void RequireTrials(const EvaluationMode& mode) {
  if (mode.trials < 1) {
    throw std::invalid_argument("monte carlo mode needs trials >= 1");
  }
}

double Ratio(double opt, double sw) {
  return sw > 0.0 ? opt / sw : std::numeric_limits<double>::infinity();
}

}  // namespace

Estimate ExpectedOpt(const Prior& f, const Prior& g,
                     const EvaluationMode& mode) {
  RequireSellerRoles(f, g);
  switch (mode.method) {
    case EvalMethod::kExact: {
      const auto* fd = std::get_if<DiscretePrior>(&f);
      const auto* gd = std::get_if<DiscretePrior>(&g);
      if (fd == nullptr || gd == nullptr) {
        throw UnsupportedModeError("exact mode needs discrete priors");
      }
      return {ExactOpt(*fd, *gd), 0.0};
    }
    case EvalMethod::kQuadrature: {
      const DiscretePrior& fd = RequireDiscreteSubmodularBuyer(f);
      if (const auto* gd = std::get_if<DiscretePrior>(&g)) {
        return {ExactOpt(fd, *gd), 0.0};
      }
      return {QuadratureOpt(fd, std::get<SortedIidPrior>(g)), 0.0};
    }
    case EvalMethod::kMonteCarlo: {
      RequireTrials(mode);
      // Any mechanism works for the benchmark; the no-trade one is cheapest.
      const EvaluatedMechanism none =
          FixedPriceMechanism::UnitSchedule(0.0, PriorK(g));
      return MeanAndStdError(
          SimulateTrials(none, f, g, mode.trials, mode.seed).opt);
    }
  }
  return {};
}

Estimate ExpectedSw(const EvaluatedMechanism& mech, const Prior& f,
                    const Prior& g, const EvaluationMode& mode) {
  RequireSellerRoles(f, g);
  if (const auto* m = std::get_if<FixedPriceMechanism>(&mech);
      m != nullptr && m->k() != PriorK(g)) {
    throw std::invalid_argument("mechanism k does not match the priors");
  }
  switch (mode.method) {
    case EvalMethod::kExact: {
      const auto* fd = std::get_if<DiscretePrior>(&f);
      const auto* gd = std::get_if<DiscretePrior>(&g);
      if (fd == nullptr || gd == nullptr) {
        throw UnsupportedModeError("exact mode needs discrete priors");
      }
      return {ExactSw(mech, *fd, *gd), 0.0};
    }
    case EvalMethod::kQuadrature: {
      const DiscretePrior& fd = RequireDiscreteSubmodularBuyer(f);
      if (const auto* gd = std::get_if<DiscretePrior>(&g)) {
        return {ExactSw(mech, fd, *gd), 0.0};
      }
      return {QuadratureSw(mech, fd, std::get<SortedIidPrior>(g),
                           mode.quadrature_nodes),
              0.0};
    }
    case EvalMethod::kMonteCarlo:
      RequireTrials(mode);
      return MeanAndStdError(
          SimulateTrials(mech, f, g, mode.trials, mode.seed).sw);
  }
  return {};
}

WelfareReport Evaluate(const EvaluatedMechanism& mech, const Prior& f,
                       const Prior& g, const EvaluationMode& mode) {
  WelfareReport report;
  report.method = mode.method;
  if (mode.method == EvalMethod::kMonteCarlo) {
    RequireSellerRoles(f, g);
    RequireTrials(mode);
    const TrialValues values =
        SimulateTrials(mech, f, g, mode.trials, mode.seed);
    const Estimate opt = MeanAndStdError(values.opt);
    const Estimate sw = MeanAndStdError(values.sw);
    report.opt = opt.value;
    report.sw = sw.value;
    report.stderr_opt = opt.std_error;
    report.stderr_sw = sw.std_error;
    report.trials = mode.trials;
  } else {
    report.opt = ExpectedOpt(f, g, mode).value;
    report.sw = ExpectedSw(mech, f, g, mode).value;
    // Quadrature over two discrete priors is exact.
    if (mode.method == EvalMethod::kQuadrature &&
        IsDiscrete(g)) {
      report.method = EvalMethod::kExact;
    }
  }
  report.ratio = Ratio(report.opt, report.sw);
  return report;
}

}  // namespace mbt
