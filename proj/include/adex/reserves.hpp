#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The Adex Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
//
// Walrasian equilibria with reserve prices (WERP), via the reduction that
// adds an additive player whose item values equal the reserves: a WERP for
// bidders B is exactly a plain Walrasian equilibrium for B plus that player,
// with unsold items handed to the player and priced at their reserve.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adex/allocation.hpp"
#include "adex/errors.hpp"
#include "adex/items.hpp"
#include "adex/prices.hpp"
#include "adex/rational.hpp"
#include "adex/valuation.hpp"
#include "adex/walrasian.hpp"

namespace adex {

struct WerpEquilibrium {
  Allocation allocation;  // real bidders only; unsold items stay unallocated
  PriceVector prices;     // >= r on the ground set, zero off it
};

/// Appends the additive player a with v_a(S) = r(S). Her bidder id is the
/// size of the original list.
inline std::vector<Valuation> augment_with_additive_player(const std::vector<Valuation>& valuations,
                                                           const PriceVector& reserves) {
  std::vector<Valuation> out = valuations;
  out.push_back(Valuation::additive(reserves.entries()));
  return out;
}

namespace detail {

/// Drops the additive player from an augmented-economy allocation; her
/// items and the unallocated ones both map to "unsold at reserve".
inline Allocation strip_additive_player(const Allocation& augmented, std::size_t num_real) {
  std::map<int, ItemSet> out;
  for (std::size_t b = 0; b < num_real; ++b) {
    out[static_cast<int>(b)] = augmented.set_of(static_cast<int>(b));
  }
  return Allocation(std::move(out));
}

inline PriceVector werp_prices_from_augmented(ItemSet items, const PriceVector& augmented_prices,
                                              const PriceVector& reserves) {
  std::vector<Rational> p(static_cast<std::size_t>(reserves.size()));
  for (int j : items.items()) {
    p[static_cast<std::size_t>(j)] = max(augmented_prices[j], reserves[j]);
  }
  return PriceVector(std::move(p));
}

}  // namespace detail

/// Exact membership test for the WERP price lattice. A vector p is a WERP
/// price vector iff it supports the (deterministic) optimal allocation of
/// the augmented economy: envy-free for the real bidders on `items`,
/// p >= r, and every item unsold there priced at its reserve.
inline bool is_werp_price(int num_items, ItemSet items, const std::vector<Valuation>& valuations,
                          const PriceVector& reserves, const PriceVector& prices,
                          std::string* why = nullptr) {
  (void)num_items;
  for (int j : items.items()) {
    if (prices[j] < reserves[j]) {
      if (why) *why = "price of item " + std::to_string(j) + " is below its reserve";
      return false;
    }
  }
  const std::vector<Valuation> augmented = augment_with_additive_player(valuations, reserves);
  const WelfareSolution ws = max_welfare(items, augmented);
  const Allocation alloc = detail::strip_additive_player(ws.allocation, valuations.size());
  const EnvyReport envy = check_envy_free(valuations, alloc, prices, items);
  if (!envy.envy_free()) {
    if (why) {
      const auto& e = envy.envious.front();
      *why = "bidder " + std::to_string(e.bidder) + " holds " + e.current.str() +
             " but prefers " + e.better.str();
    }
    return false;
  }
  for (int j : (items - alloc.union_all()).items()) {
    if (prices[j] != reserves[j]) {
      if (why) *why = "unsold item " + std::to_string(j) + " not priced at its reserve";
      return false;
    }
  }
  return true;
}

/// WERP with minimum prices on `items`, or NoWerpEquilibrium.
inline WerpEquilibrium solve_werp(int num_items, ItemSet items,
                                  const std::vector<Valuation>& valuations,
                                  const PriceVector& reserves) {
  const std::vector<Valuation> augmented = augment_with_additive_player(valuations, reserves);
  WalrasianEquilibrium we;
  try {
    we = solve_we(num_items, items, augmented);
  } catch (const NoWalrasianEquilibrium& err) {
    throw NoWerpEquilibrium(std::string("augmented economy has no equilibrium: ") + err.what());
  }
  WerpEquilibrium out{detail::strip_additive_player(we.allocation, valuations.size()),
                      detail::werp_prices_from_augmented(items, we.prices, reserves)};
  const EnvyReport envy = check_envy_free(valuations, out.allocation, out.prices, items);
  if (!envy.envy_free()) {
    const auto& e = envy.envious.front();
    throw NoWerpEquilibrium("mapped prices are not envy-free: bidder " +
                            std::to_string(e.bidder) + " prefers " + e.better.str());
  }
  return out;
}

/// The componentwise-least WERP prices (the minimum of the WERP lattice for
/// gross-substitutes bidders).
inline PriceVector min_werp_prices(int num_items, ItemSet items,
                                   const std::vector<Valuation>& valuations,
                                   const PriceVector& reserves) {
  return solve_werp(num_items, items, valuations, reserves).prices;
}

/// Greatest WERP prices, from the per-item marginal scheme on the augmented
/// economy. Used for lattice sampling.
inline PriceVector max_werp_prices(int num_items, ItemSet items,
                                   const std::vector<Valuation>& valuations,
                                   const PriceVector& reserves) {
  const std::vector<Valuation> augmented = augment_with_additive_player(valuations, reserves);
  PriceVector top;
  try {
    top = max_walrasian_prices(num_items, items, augmented);
  } catch (const NoWalrasianEquilibrium& err) {
    throw NoWerpEquilibrium(std::string("augmented economy has no equilibrium: ") + err.what());
  }
  PriceVector mapped = detail::werp_prices_from_augmented(items, top, reserves);
  std::string why;
  if (!is_werp_price(num_items, items, valuations, reserves, mapped, &why)) {
    throw NoWerpEquilibrium("mapped maximum prices failed verification: " + why);
  }
  return mapped;
}

namespace detail {

inline PriceVector verified_lattice_point(PriceVector candidate, const char* op, int num_items,
                                          ItemSet items, const std::vector<Valuation>& valuations,
                                          const PriceVector& reserves) {
  std::string why;
  if (!is_werp_price(num_items, items, valuations, reserves, candidate, &why)) {
    throw LatticeViolation(std::string(op) + " of equilibrium price vectors failed " +
                           "re-verification: " + why);
  }
  return candidate;
}

}  // namespace detail

/// Item-wise min of two verified WERP price vectors, re-verified before it
/// is returned. Failure means a solver defect or a non-GS input.
inline PriceVector werp_lattice_meet(const PriceVector& p1, const PriceVector& p2, int num_items,
                                     ItemSet items, const std::vector<Valuation>& valuations,
                                     const PriceVector& reserves) {
  return detail::verified_lattice_point(pointwise_min(p1, p2), "meet", num_items, items,
                                        valuations, reserves);
}

inline PriceVector werp_lattice_join(const PriceVector& p1, const PriceVector& p2, int num_items,
                                     ItemSet items, const std::vector<Valuation>& valuations,
                                     const PriceVector& reserves) {
  return detail::verified_lattice_point(pointwise_max(p1, p2), "join", num_items, items,
                                        valuations, reserves);
}

}  // namespace adex
