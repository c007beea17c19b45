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

#include "mbt/valuation.h"

#include <cmath>
#include <stdexcept>

namespace mbt {

std::string_view ToString(Role role) {
  return role == Role::kBuyer ? "buyer" : "seller";
}

std::string_view ToString(ValuationClass cls) {
  return cls == ValuationClass::kIncreasing ? "increasing"
                                            : "increasing_submodular";
}

Role ParseRole(std::string_view text) {
  if (text == "buyer") return Role::kBuyer;
  if (text == "seller") return Role::kSeller;
  throw std::invalid_argument("unknown role '" + std::string(text) + "'");
}

ValuationClass ParseValuationClass(std::string_view text) {
  if (text == "increasing") return ValuationClass::kIncreasing;
  if (text == "increasing_submodular") {
    return ValuationClass::kIncreasingSubmodular;
  }
  throw std::invalid_argument("unknown valuation class '" + std::string(text) +
                              "'");
}

Valuation::Valuation(std::vector<Money> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw std::invalid_argument("valuation needs k >= 1 (at least 2 values)");
  }
  if (values_[0] != 0.0) {
    throw std::invalid_argument("valuation must satisfy v(0) = 0");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw std::invalid_argument("valuation entry " + std::to_string(i) +
                                  " is negative or not finite");
    }
  }
}

MarginalProfile MarginalProfileOf(const Valuation& v, Role role) {
  const int k = v.k();
  MarginalProfile profile{role, std::vector<Money>(k)};
  for (Quantity q = 1; q <= k; ++q) {
    profile.deltas[q - 1] = role == Role::kBuyer ? v(q) - v(q - 1)
                                                 : v(k - q + 1) - v(k - q);
  }
  return profile;
}

Valuation FromMarginals(const MarginalProfile& profile) {
  const int k = profile.k();
  if (k < 1) throw std::invalid_argument("empty marginal profile");
  for (Money d : profile.deltas) {
    if (!(d >= 0.0)) throw std::invalid_argument("negative marginal");
  }
  std::vector<Money> values(k + 1, 0.0);
  if (profile.role == Role::kBuyer) {
    for (Quantity q = 1; q <= k; ++q) {
      values[q] = values[q - 1] + profile.at(q);
    }
  } else {
    // Unit j of the holding is the (k-j+1)-th one sold.
    for (Quantity j = 1; j <= k; ++j) {
      values[j] = values[j - 1] + profile.at(k - j + 1);
    }
  }
  return Valuation(std::move(values));
}

std::optional<Quantity> FirstClassViolation(const Valuation& v,
                                            ValuationClass cls,
                                            Strictness strictness) {
  const int k = v.k();
  for (Quantity q = 1; q <= k; ++q) {
    const bool ok = strictness == Strictness::kStrict ? v(q) > v(q - 1)
                                                      : v(q) >= v(q - 1);
    if (!ok) return q;
  }
  if (cls == ValuationClass::kIncreasingSubmodular) {
    for (Quantity q = 2; q <= k; ++q) {
      if (v(q) - v(q - 1) > v(q - 1) - v(q - 2)) return q;
    }
  }
  return std::nullopt;
}

bool Validate(const Valuation& v, ValuationClass cls, Strictness strictness) {
  return !FirstClassViolation(v, cls, strictness).has_value();
}

namespace {

void CheckGrid(int k, std::span<const Money> grid) {
  if (k < 1) throw std::invalid_argument("lattice needs k >= 1");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("lattice grid must be strictly ascending");
    }
  }
}

// Depth-first over positions 1..k; `values` holds the prefix built so far.
bool VisitFrom(int k, std::span<const Money> grid, ValuationClass cls,
               std::vector<Money>& values, int q,
               const std::function<bool(const Valuation&)>& visit) {
  if (q > k) return visit(Valuation(values));
  for (Money candidate : grid) {
    if (!(candidate > values[q - 1])) continue;
    if (cls == ValuationClass::kIncreasingSubmodular && q >= 2 &&
        candidate - values[q - 1] > values[q - 1] - values[q - 2]) {
      // Grid is ascending, so every later candidate breaks concavity too.
      break;
    }
    values[q] = candidate;
    if (!VisitFrom(k, grid, cls, values, q + 1, visit)) return false;
  }
  return true;
}

}  // namespace

void ForEachLattice(int k, std::span<const Money> grid, ValuationClass cls,
                    const std::function<bool(const Valuation&)>& visit) {
  CheckGrid(k, grid);
  if (grid.empty()) return;
  std::vector<Money> values(k + 1, 0.0);
  VisitFrom(k, grid, cls, values, 1, visit);
}

std::vector<Valuation> EnumerateLattice(int k, std::span<const Money> grid,
                                        ValuationClass cls) {
  std::vector<Valuation> out;
  ForEachLattice(k, grid, cls, [&out](const Valuation& v) {
    out.push_back(v);
    return true;
  });
  return out;
}

namespace {

Valuation RequireIncreasing(std::vector<Money> values, const char* gadget) {
  Valuation v(std::move(values));
  if (!Validate(v, ValuationClass::kIncreasing)) {
    throw std::invalid_argument(std::string(gadget) +
                                ": parameters do not yield an increasing "
                                "valuation");
  }
  return v;
}

}  // namespace

Valuation SteepThenSlow(int k, Quantity q_star, Money steep_rate,
                        Money slow_rate) {
  if (k < 1 || q_star < 0 || q_star > k) {
    throw std::invalid_argument("steep_then_slow: q* must lie in [0, k]");
  }
  if (!(steep_rate > 0.0) || !(slow_rate > 0.0)) {
    throw std::invalid_argument("steep_then_slow: rates must be positive");
  }
  std::vector<Money> values(k + 1, 0.0);
  for (Quantity q = 1; q <= k; ++q) {
    values[q] = q <= q_star ? steep_rate * q
                            : steep_rate * q_star + slow_rate * (q - q_star);
  }
  return RequireIncreasing(std::move(values), "steep_then_slow");
}

Valuation JumpAt(int k, std::span<const std::pair<Quantity, Money>> points,
                 Money filler_rate) {
  if (k < 1) throw std::invalid_argument("jump_at: k must be >= 1");
  if (!(filler_rate >= 0.0)) {
    throw std::invalid_argument("jump_at: filler rate must be non-negative");
  }
  Quantity last_q = 0;
  Money last_value = 0.0;
  for (const auto& [q, value] : points) {
    if (q <= last_q || q > k) {
      throw std::invalid_argument(
          "jump_at: jump quantities must be ascending within [1, k]");
    }
    if (!(value > last_value)) {
      throw std::invalid_argument(
          "jump_at: jump values must be increasing in q");
    }
    last_q = q;
    last_value = value;
  }
  std::vector<Money> values(k + 1, 0.0);
  std::size_t next = 0;
  Quantity anchor_q = 0;
  Money anchor_value = 0.0;
  for (Quantity q = 1; q <= k; ++q) {
    if (next < points.size() && points[next].first == q) {
      anchor_q = q;
      anchor_value = points[next].second;
      ++next;
      values[q] = anchor_value;
    } else {
      values[q] = anchor_value + filler_rate * (q - anchor_q);
    }
  }
  return RequireIncreasing(std::move(values), "jump_at");
}

Valuation NearPrice(int k, Money p, Money eps, Quantity favored_q, Role role) {
  if (!(eps > 0.0) || !(p > 2.0 * eps)) {
    throw std::invalid_argument("near_price: requires p > 2*eps > 0");
  }
  if (favored_q < 1 || favored_q > k ||
      (role == Role::kSeller && favored_q == k)) {
    throw std::invalid_argument("near_price: favored quantity out of range");
  }
  std::vector<Money> values(k + 1, 0.0);
  if (role == Role::kBuyer) {
    for (Quantity q = 1; q <= k; ++q) {
      values[q] = p * q + (q == favored_q ? eps : -eps);
    }
  } else {
    values[k] = p * k;
    for (Quantity traded = 1; traded < k; ++traded) {
      const Quantity kept = k - traded;
      values[kept] = p * kept + (traded == favored_q ? eps : -eps);
    }
  }
  return RequireIncreasing(std::move(values), "near_price");
}

Money DefaultSteepRate(Money max_price) {
  return 1e6 * (max_price > 0.0 ? max_price : 1.0);
}

Money DefaultSlowRate(Money min_positive_price) {
  return 1e-6 * (min_positive_price > 0.0 ? min_positive_price : 1.0);
}

}  // namespace mbt
