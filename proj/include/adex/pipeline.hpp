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
// The three-party auction. Central auction over mediators (each represented
// by the OR-player of her bidders), then one local auction per mediator
// with the central prices as reserves. The assembled certificate is checked
// against the equilibrium definition before it leaves the solver.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adex/allocation.hpp"
#include "adex/errors.hpp"
#include "adex/instance.hpp"
#include "adex/items.hpp"
#include "adex/mediator.hpp"
#include "adex/parallel.hpp"
#include "adex/prices.hpp"
#include "adex/rational.hpp"
#include "adex/valuation.hpp"
#include "adex/walrasian.hpp"

namespace adex {

enum class CentralPriceMode { kMinimum, kMaximum };

enum class CertificateKind { kThreeParty, kThreePartyMaxPrices, kTrivial };

/// Everything needed to re-check a three-party outcome from scratch:
/// central prices r, the mediator-level and bidder-level allocations, one
/// local price vector per mediator, and each mediator's revenue.
struct EquilibriumCertificate {
  int num_items = 0;
  CertificateKind kind = CertificateKind::kThreeParty;
  PriceVector central_prices;
  Allocation mediator_allocation;          // mediator id -> items won centrally
  std::vector<PriceVector> local_prices;   // one per mediator, over all items
  Allocation bidder_allocation;            // global bidder ids
  std::vector<Rational> revenues;          // one per mediator
};

/// Requirement-by-requirement verdict of the equilibrium definition.
struct EquilibriumVerdict {
  bool mediator_sets_demanded = false;       // 1: central sets in mediator demand at r
  bool positive_priced_items_allocated = false;  // 2: r_j > 0 implies allocated
  bool local_prices_extend_central = false;  // 3: p^i = r off the mediator's set
  bool bidders_envy_free = false;            // 4: bidder sets demanded at p^i over all items
  std::vector<std::string> failures;

  bool all_pass() const {
    return mediator_sets_demanded && positive_priced_items_allocated &&
           local_prices_extend_central && bidders_envy_free;
  }
};

struct SolveResult {
  EquilibriumCertificate certificate;
  EquilibriumVerdict verdict;
};

namespace detail {

inline void require_certificate_shape(const Instance& instance,
                                      const EquilibriumCertificate& cert) {
  if (cert.num_items != instance.num_items()) {
    throw ValidationError("certificate covers " + std::to_string(cert.num_items) +
                          " items, instance has " + std::to_string(instance.num_items()));
  }
  if (static_cast<int>(cert.local_prices.size()) != instance.num_mediators()) {
    throw ValidationError("certificate has " + std::to_string(cert.local_prices.size()) +
                          " local price vectors, instance has " +
                          std::to_string(instance.num_mediators()) + " mediators");
  }
  if (static_cast<int>(cert.revenues.size()) != instance.num_mediators()) {
    throw ValidationError("certificate revenue list does not match the mediator count");
  }
  if (cert.central_prices.size() != instance.num_items()) {
    throw ValidationError("central price vector has wrong length");
  }
  for (const PriceVector& p : cert.local_prices) {
    if (p.size() != instance.num_items()) {
      throw ValidationError("local price vector has wrong length");
    }
  }
  for (const auto& [id, set] : cert.mediator_allocation.entries()) {
    if (id < 0 || id >= instance.num_mediators()) {
      throw ValidationError("certificate allocates items to unknown mediator " +
                            std::to_string(id));
    }
    if (!set.subset_of(instance.universe())) {
      throw ValidationError("mediator allocation outside the item universe");
    }
  }
  for (const auto& [id, set] : cert.bidder_allocation.entries()) {
    if (id < 0 || id >= instance.num_bidders()) {
      throw ValidationError("certificate allocates items to unknown bidder " +
                            std::to_string(id));
    }
    if (!set.subset_of(instance.universe())) {
      throw ValidationError("bidder allocation outside the item universe");
    }
  }
}

}  // namespace detail

/// Evaluates the four equilibrium requirements independently and reports
/// every failure with a witness. Requirement 1 goes through the
/// definitional brute-force mediator demand.
inline EquilibriumVerdict check_equilibrium(const Instance& instance,
                                            const EquilibriumCertificate& cert,
                                            int threads = 1) {
  detail::require_certificate_shape(instance, cert);
  EquilibriumVerdict verdict;
  const ItemSet universe = instance.universe();
  const PriceVector& r = cert.central_prices;

  // Requirement 1: every mediator holds a set in her demand at r.
  verdict.mediator_sets_demanded = true;
  for (int i = 0; i < instance.num_mediators(); ++i) {
    const std::vector<ItemSet> family =
        mediator_demand_bruteforce(instance.num_items(), instance.member_valuations(i), r,
                                   threads);
    const ItemSet held = cert.mediator_allocation.set_of(i);
    bool in_demand = false;
    for (const ItemSet& s : family) {
      if (s == held) {
        in_demand = true;
        break;
      }
    }
    if (!in_demand) {
      verdict.mediator_sets_demanded = false;
      verdict.failures.push_back("requirement 1: mediator " + std::to_string(i) + " holds " +
                                 held.str() + ", not in her demand at the central prices");
    }
  }

  // Requirement 2: items with non-zero central price are allocated.
  verdict.positive_priced_items_allocated = true;
  const ItemSet centrally_allocated = cert.mediator_allocation.union_all();
  for (int j = 0; j < instance.num_items(); ++j) {
    if (!r[j].is_zero() && !centrally_allocated.contains(j)) {
      verdict.positive_priced_items_allocated = false;
      verdict.failures.push_back("requirement 2: item " + std::to_string(j) +
                                 " has central price " + r[j].str() +
                                 " but no mediator holds it");
    }
  }

  // Requirement 3: local prices coincide with r off the mediator's set.
  verdict.local_prices_extend_central = true;
  for (int i = 0; i < instance.num_mediators(); ++i) {
    const ItemSet mine = cert.mediator_allocation.set_of(i);
    for (int j = 0; j < instance.num_items(); ++j) {
      if (mine.contains(j)) continue;
      if (cert.local_prices[static_cast<std::size_t>(i)][j] != r[j]) {
        verdict.local_prices_extend_central = false;
        verdict.failures.push_back("requirement 3: mediator " + std::to_string(i) +
                                   " prices item " + std::to_string(j) + " at " +
                                   cert.local_prices[static_cast<std::size_t>(i)][j].str() +
                                   ", central price is " + r[j].str());
      }
    }
  }

  // Requirement 4: every bidder holds a subset of his mediator's set that
  // is demanded at the local prices, over the whole universe.
  verdict.bidders_envy_free = true;
  for (const Bidder& bidder : instance.bidders()) {
    const int med = instance.mediator_of(bidder.id);
    const ItemSet held = cert.bidder_allocation.set_of(bidder.id);
    const PriceVector& p = cert.local_prices[static_cast<std::size_t>(med)];
    if (!held.subset_of(cert.mediator_allocation.set_of(med))) {
      verdict.bidders_envy_free = false;
      verdict.failures.push_back("requirement 4: bidder " + std::to_string(bidder.id) +
                                 " holds items outside his mediator's set");
      continue;
    }
    const Rational utility = bidder.valuation.value(held) - p.sum_over(held);
    const DemandResult best = bidder.valuation.demand(p, universe);
    if (best.max_utility > utility) {
      verdict.bidders_envy_free = false;
      verdict.failures.push_back("requirement 4: bidder " + std::to_string(bidder.id) +
                                 " holds " + held.str() + " (utility " + utility.str() +
                                 ") but demands " + best.representative.str() + " (utility " +
                                 best.max_utility.str() + ")");
    }
  }

  // Bidder sets must also partition within each mediator's set; overlap is
  // impossible by Allocation's invariant, so only containment is checked.
  return verdict;
}

/// Central auction (over OR-players) plus local auctions, assembled into a
/// certificate and validated. Throws NoEquilibrium if the certificate fails
/// its own check — impossible for gross-substitutes inputs, so a failure
/// signals a defect, not a property of the input.
inline SolveResult solve_three_party(const Instance& instance,
                                     CentralPriceMode mode = CentralPriceMode::kMinimum,
                                     int threads = 1) {
  const int k = instance.num_items();
  const ItemSet universe = instance.universe();

  std::vector<Valuation> mediator_valuations;
  mediator_valuations.reserve(static_cast<std::size_t>(instance.num_mediators()));
  for (int i = 0; i < instance.num_mediators(); ++i) {
    mediator_valuations.push_back(or_player(instance.member_valuations(i)));
  }

  EquilibriumCertificate cert;
  cert.num_items = k;
  cert.kind = mode == CentralPriceMode::kMinimum ? CertificateKind::kThreeParty
                                                 : CertificateKind::kThreePartyMaxPrices;
  PriceVector r;
  Allocation central_alloc;
  try {
    central_alloc = max_welfare(universe, mediator_valuations).allocation;
    r = mode == CentralPriceMode::kMinimum
            ? min_walrasian_prices(k, universe, mediator_valuations)
            : max_walrasian_prices(k, universe, mediator_valuations);
  } catch (const NoWalrasianEquilibrium& err) {
    throw NoEquilibrium(std::string("central auction has no equilibrium: ") + err.what());
  }
  cert.central_prices = r;
  cert.mediator_allocation = central_alloc;

  cert.local_prices.assign(static_cast<std::size_t>(instance.num_mediators()), PriceVector());
  cert.revenues.assign(static_cast<std::size_t>(instance.num_mediators()), Rational());
  std::vector<std::map<int, ItemSet>> local_sets(
      static_cast<std::size_t>(instance.num_mediators()));

  std::vector<std::optional<std::string>> local_errors(
      static_cast<std::size_t>(instance.num_mediators()));
  parallel_for_index(static_cast<std::size_t>(instance.num_mediators()), threads,
                     [&](std::size_t i) {
    const MediatorGroup& group = instance.mediators()[i];
    const VirtualAuctionOutcome outcome =
        virtual_auction(k, instance.member_valuations(static_cast<int>(i)),
                        central_alloc.set_of(static_cast<int>(i)), r);
    if (outcome.rejected()) {
      local_errors[i] = "local auction of mediator " + std::to_string(i) + " rejected its set";
      return;
    }
    cert.local_prices[i] = outcome.prices;
    cert.revenues[i] = *outcome.revenue;
    for (const auto& [local_id, set] : outcome.allocation.entries()) {
      local_sets[i][group.bidder_ids[static_cast<std::size_t>(local_id)]] = set;
    }
  });
  for (const auto& err : local_errors) {
    if (err.has_value()) throw NoEquilibrium(*err);
  }

  std::map<int, ItemSet> merged;
  for (const auto& per_mediator : local_sets) {
    for (const auto& [bidder, set] : per_mediator) merged[bidder] = set;
  }
  cert.bidder_allocation = Allocation(std::move(merged));

  SolveResult result{std::move(cert), {}};
  result.verdict = check_equilibrium(instance, result.certificate, threads);
  if (!result.verdict.all_pass()) {
    std::string what = "assembled certificate failed validation:";
    for (const std::string& f : result.verdict.failures) what += "\n  " + f;
    throw NoEquilibrium(what);
  }
  return result;
}

/// The certificate induced by a bidder-level Walrasian equilibrium: all
/// m+1 price vectors equal the bidder-level minimum prices, each mediator
/// holds the union of her bidders' sets, every revenue is zero.
inline SolveResult trivial_equilibrium_from_we(const Instance& instance, int threads = 1) {
  const int k = instance.num_items();
  const WalrasianEquilibrium we = solve_we(k, instance.universe(), instance.all_valuations());

  EquilibriumCertificate cert;
  cert.num_items = k;
  cert.kind = CertificateKind::kTrivial;
  cert.central_prices = we.prices;
  cert.bidder_allocation = we.allocation;
  std::map<int, ItemSet> med_sets;
  for (int i = 0; i < instance.num_mediators(); ++i) {
    ItemSet mine;
    for (int b : instance.mediators()[static_cast<std::size_t>(i)].bidder_ids) {
      mine = mine | we.allocation.set_of(b);
    }
    med_sets[i] = mine;
  }
  cert.mediator_allocation = Allocation(std::move(med_sets));
  cert.local_prices.assign(static_cast<std::size_t>(instance.num_mediators()), we.prices);
  cert.revenues.assign(static_cast<std::size_t>(instance.num_mediators()), Rational(0));

  SolveResult result{std::move(cert), {}};
  result.verdict = check_equilibrium(instance, result.certificate, threads);
  if (!result.verdict.all_pass()) {
    std::string what = "trivial certificate failed validation:";
    for (const std::string& f : result.verdict.failures) what += "\n  " + f;
    throw NoEquilibrium(what);
  }
  return result;
}

/// The minimum-price relation: the componentwise max of the local price
/// vectors must equal the bidder-level minimum Walrasian prices.
struct MinPriceRelationResult {
  bool passed = false;
  PriceVector bidder_min_prices;
  PriceVector max_local_prices;
};

inline MinPriceRelationResult check_min_price_relation(const Instance& instance,
                                                       const EquilibriumCertificate& cert) {
  detail::require_certificate_shape(instance, cert);
  MinPriceRelationResult out;
  out.bidder_min_prices =
      min_walrasian_prices(instance.num_items(), instance.universe(), instance.all_valuations());
  PriceVector running = cert.local_prices.front();
  for (std::size_t i = 1; i < cert.local_prices.size(); ++i) {
    running = pointwise_max(running, cert.local_prices[i]);
  }
  out.max_local_prices = std::move(running);
  out.passed = out.max_local_prices == out.bidder_min_prices;
  return out;
}

/// Wraps mediators into near-balanced groups of at most `fanout`, repeated
/// depth-1 times. Valuations and bidders are untouched; a super-mediator
/// simply pools the bidders of her children, which is exactly the OR of
/// their OR-players.
inline Instance build_mediator_hierarchy(const Instance& instance, int depth, int fanout) {
  if (depth < 1) throw ValidationError("hierarchy depth must be at least 1");
  if (fanout < 1) throw ValidationError("hierarchy fanout must be at least 1");
  std::vector<std::vector<int>> groups;
  for (const MediatorGroup& g : instance.mediators()) groups.push_back(g.bidder_ids);

  for (int level = 1; level < depth; ++level) {
    const int m = static_cast<int>(groups.size());
    const int super_count = (m + fanout - 1) / fanout;
    if (super_count == m) break;
    std::vector<std::vector<int>> merged(static_cast<std::size_t>(super_count));
    // near-balanced consecutive blocks
    const int base = m / super_count;
    const int extra = m % super_count;
    int next = 0;
    for (int s = 0; s < super_count; ++s) {
      const int take = base + (s < extra ? 1 : 0);
      for (int t = 0; t < take; ++t) {
        auto& child = groups[static_cast<std::size_t>(next++)];
        merged[static_cast<std::size_t>(s)].insert(merged[static_cast<std::size_t>(s)].end(),
                                                   child.begin(), child.end());
      }
    }
    groups = std::move(merged);
  }

  std::vector<MediatorGroup> mediators;
  mediators.reserve(groups.size());
  for (std::size_t s = 0; s < groups.size(); ++s) {
    mediators.push_back({static_cast<int>(s), std::move(groups[s])});
  }
  std::vector<Bidder> bidders;
  bidders.reserve(static_cast<std::size_t>(instance.num_bidders()));
  for (const Bidder& b : instance.bidders()) bidders.push_back(b);
  return Instance(instance.num_items(), std::move(bidders), std::move(mediators));
}

}  // namespace adex
