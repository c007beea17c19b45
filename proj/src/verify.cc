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

#include "mbt/verify.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mbt {

MechanismUnderTest MechanismUnderTest::FromFixedPrice(
    const FixedPriceMechanism& m, ValuationClass cls) {
  return MechanismUnderTest{
      [m](const Valuation& v, const Valuation& w) { return m.Run(v, w); },
      m.k(), cls, "fixed_price"};
}

std::string_view ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kIrBuyer:
      return "IR_buyer";
    case ViolationKind::kIrSeller:
      return "IR_seller";
    case ViolationKind::kSbb:
      return "SBB";
    case ViolationKind::kDsicBuyer:
      return "DSIC_buyer";
    case ViolationKind::kDsicSeller:
      return "DSIC_seller";
  }
  return {};
}

ViolationKind ParseViolationKind(std::string_view text) {
  for (ViolationKind kind :
       {ViolationKind::kIrBuyer, ViolationKind::kIrSeller, ViolationKind::kSbb,
        ViolationKind::kDsicBuyer, ViolationKind::kDsicSeller}) {
    if (ToString(kind) == text) return kind;
  }
  throw std::invalid_argument("unknown violation kind '" + std::string(text) +
                              "'");
}

std::vector<Profile> CrossProfiles(std::span<const Valuation> buyers,
                                   std::span<const Valuation> sellers) {
  std::vector<Profile> out;
  out.reserve(buyers.size() * sellers.size());
  for (const Valuation& v : buyers) {
    for (const Valuation& w : sellers) out.emplace_back(v, w);
  }
  return out;
}

namespace {

void AppendIrSbb(const Valuation& v, const Valuation& w, const Outcome& o,
                 std::vector<Violation>& out) {
  const Utilities u = UtilitiesOf(o, v, w);
  if (u.buyer < 0.0) {
    out.push_back({ViolationKind::kIrBuyer, v, w, std::nullopt, -u.buyer});
  }
  if (u.seller_gain < 0.0) {
    out.push_back(
        {ViolationKind::kIrSeller, v, w, std::nullopt, -u.seller_gain});
  }
  if (o.buyer_payment != -o.seller_payment) {
    out.push_back({ViolationKind::kSbb, v, w, std::nullopt,
                   std::abs(o.buyer_payment + o.seller_payment)});
  }
}

void CheckK(const MechanismUnderTest& mut, const Valuation& v) {
  if (v.k() != mut.k) {
    throw std::invalid_argument("valuation k does not match the mechanism");
  }
}

}  // namespace

std::vector<Violation> CheckIrSbb(const MechanismUnderTest& mut,
                                  std::span<const Profile> profiles) {
  std::vector<Violation> out;
  for (const auto& [v, w] : profiles) {
    CheckK(mut, v);
    CheckK(mut, w);
    AppendIrSbb(v, w, mut.oracle(v, w), out);
  }
  return out;
}

std::vector<Violation> CheckDsic(const MechanismUnderTest& mut,
                                 std::span<const Valuation> buyer_set,
                                 std::span<const Valuation> seller_set) {
  for (const Valuation& v : buyer_set) CheckK(mut, v);
  for (const Valuation& w : seller_set) CheckK(mut, w);
  const std::size_t nb = buyer_set.size();
  const std::size_t ns = seller_set.size();
  std::vector<Outcome> table(nb * ns);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < ns; ++j) {
      table[i * ns + j] = mut.oracle(buyer_set[i], seller_set[j]);
    }
  }
  std::vector<Violation> out;
  for (std::size_t i = 0; i < nb; ++i) {
    const Valuation& v = buyer_set[i];
    for (std::size_t j = 0; j < ns; ++j) {
      const Valuation& w = seller_set[j];
      const Utilities truthful = UtilitiesOf(table[i * ns + j], v, w);
      for (std::size_t di = 0; di < nb; ++di) {
        if (di == i) continue;
        const Money gain =
            UtilitiesOf(table[di * ns + j], v, w).buyer - truthful.buyer;
        if (gain > 0.0) {
          out.push_back({ViolationKind::kDsicBuyer, v, w, buyer_set[di], gain});
        }
      }
      for (std::size_t dj = 0; dj < ns; ++dj) {
        if (dj == j) continue;
        const Money gain = UtilitiesOf(table[i * ns + dj], v, w).seller_gain -
                           truthful.seller_gain;
        if (gain > 0.0) {
          out.push_back(
              {ViolationKind::kDsicSeller, v, w, seller_set[dj], gain});
        }
      }
    }
  }
  return out;
}

bool Reverify(const MechanismUnderTest& mut, const Violation& violation) {
  const Valuation& v = violation.v;
  const Valuation& w = violation.w;
  const Outcome truthful = mut.oracle(v, w);
  const Utilities u = UtilitiesOf(truthful, v, w);
  Money delta = 0.0;
  switch (violation.kind) {
    case ViolationKind::kIrBuyer:
      delta = -u.buyer;
      break;
    case ViolationKind::kIrSeller:
      delta = -u.seller_gain;
      break;
    case ViolationKind::kSbb:
      delta = std::abs(truthful.buyer_payment + truthful.seller_payment);
      break;
    case ViolationKind::kDsicBuyer:
      if (!violation.deviation) return false;
      delta =
          UtilitiesOf(mut.oracle(*violation.deviation, w), v, w).buyer -
          u.buyer;
      break;
    case ViolationKind::kDsicSeller:
      if (!violation.deviation) return false;
      delta = UtilitiesOf(mut.oracle(v, *violation.deviation), v, w)
                  .seller_gain -
              u.seller_gain;
      break;
  }
  return delta > 0.0 && delta == violation.delta;
}

std::vector<Valuation> CounterexampleGadgets(const FixedPriceMechanism& m,
                                             ValuationClass cls,
                                             const SearchOptions& options) {
  const int k = m.k();
  const Money p = m.price();
  const QuantitySet& s = m.tradeable();
  std::vector<Valuation> gadgets;
  auto keep = [&](auto&& build) {
    try {
      Valuation v = build();
      if (Validate(v, cls) &&
          std::find(gadgets.begin(), gadgets.end(), v) == gadgets.end()) {
        gadgets.push_back(std::move(v));
      }
    } catch (const std::invalid_argument&) {
      // Parameters out of range for this (p, S); skip the gadget.
    }
  };
  if (p > 0.0) {
    const Money eps = options.epsilon > 0.0 ? options.epsilon : p / 8.0;
    const Money slow = DefaultSlowRate(p);
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        const Quantity q = s[a];
        const Quantity q2 = s[b];
        // Buyer wants only q2; seller wants only q. The mechanism trades q.
        keep([&] {
          const std::pair<Quantity, Money> jump[] = {{q2, p * q2 + eps}};
          return JumpAt(k, jump, slow);
        });
        keep([&] { return NearPrice(k, p, eps, q, Role::kSeller); });
        // Seller wants only q2; buyer wants only q.
        keep([&] { return NearPrice(k, p, eps, q, Role::kBuyer); });
        if (q2 < k) {
          keep([&] { return NearPrice(k, p, eps, q2, Role::kSeller); });
        } else {
          keep([&] {
            const std::pair<Quantity, Money> jump[] = {{k, p * k - eps}};
            return JumpAt(k, jump, slow);
          });
        }
        // Buyer indifferent-ish between q and q2 with a strict preference
        // for q.
        keep([&] {
          const std::pair<Quantity, Money> jumps[] = {{q, p * q + 2.0 * eps},
                                                      {q2, p * q2 + eps}};
          return JumpAt(k, jumps, slow);
        });
      }
    }
  }
  const Money steep = DefaultSteepRate(p);
  const Money slow = DefaultSlowRate(p);
  for (Quantity q_star = 1; q_star <= k; ++q_star) {
    keep([&] { return SteepThenSlow(k, q_star, steep, slow); });
  }
  return gadgets;
}

std::optional<Violation> SearchCounterexample(const FixedPriceMechanism& m,
                                              ValuationClass cls,
                                              const SearchOptions& options) {
  const int k = m.k();
  const std::size_t budget =
      static_cast<std::size_t>(std::max(options.budget, 1));
  std::vector<Valuation> candidates = CounterexampleGadgets(m, cls, options);
  if (candidates.size() > budget) {
    candidates.erase(candidates.begin() + budget, candidates.end());
  }

  const Money step = m.price() > 0.0 ? m.price() / 2.0 : 0.5;
  std::vector<Money> grid;
  for (int j = 1; j <= 2 * k + 2; ++j) grid.push_back(step * j);
  ForEachLattice(k, grid, cls, [&](const Valuation& v) {
    if (candidates.size() >= budget) return false;
    if (std::find(candidates.begin(), candidates.end(), v) ==
        candidates.end()) {
      candidates.push_back(v);
    }
    return true;
  });

  const MechanismUnderTest mut = MechanismUnderTest::FromFixedPrice(m, cls);
  for (const Valuation& v : candidates) {
    for (const Valuation& w : candidates) {
      const Profile profile[] = {{v, w}};
      std::vector<Violation> found = CheckIrSbb(mut, profile);
      if (!found.empty()) return found.front();
    }
  }
  std::vector<Violation> dsic = CheckDsic(mut, candidates, candidates);
  if (!dsic.empty()) return dsic.front();
  return std::nullopt;
}

}  // namespace mbt
