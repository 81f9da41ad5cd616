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

#include <catch2/catch_amalgamated.hpp>

#include "adex/generator.hpp"
#include "adex/reserves.hpp"
#include "adex/verify.hpp"

using namespace adex;

namespace {

Valuation ud1(long v) { return Valuation::unit_demand({Rational(v)}); }

std::vector<Valuation> random_gs_bidders(Rng& rng, int k, int n) {
  std::vector<Valuation> vals;
  for (int b = 0; b < n; ++b) vals.push_back(random_valuation(rng, k, "mixed"));
  return vals;
}

}  // namespace

TEST_CASE("the additive player mirrors the reserves") {
  const PriceVector r({Rational(2), Rational(1)});
  const auto augmented = augment_with_additive_player({ud1(5), ud1(5)}, r);
  REQUIRE(augmented.size() == 3);
  CHECK(augmented.back().kind() == ValuationKind::kAdditive);
  CHECK(augmented.back().value(ItemSet::of({0, 1})) == Rational(3));

  const auto zero = augment_with_additive_player({Valuation::unit_demand({Rational(1)})},
                                                 PriceVector::zero(1));
  CHECK(zero.back().value(ItemSet::of({0})) == Rational(0));
}

TEST_CASE("reserve below and above the lone bidder") {
  const WerpEquilibrium sold = solve_werp(1, ItemSet::full(1), {ud1(5)},
                                          PriceVector({Rational(2)}));
  CHECK(sold.allocation.set_of(0) == ItemSet::of({0}));
  CHECK(sold.prices == PriceVector({Rational(2)}));

  const WerpEquilibrium unsold = solve_werp(1, ItemSet::full(1), {ud1(5)},
                                            PriceVector({Rational(7)}));
  CHECK(unsold.allocation.set_of(0) == ItemSet());
  CHECK(unsold.prices == PriceVector({Rational(7)}));
}

TEST_CASE("zero reserves reduce to the plain equilibrium") {
  Rng rng(606);
  for (int round = 0; round < 25; ++round) {
    const int k = rng.range(1, 4);
    const std::vector<Valuation> vals = random_gs_bidders(rng, k, rng.range(1, 4));
    const WerpEquilibrium werp = solve_werp(k, ItemSet::full(k), vals, PriceVector::zero(k));
    const WalrasianEquilibrium we = solve_we(k, ItemSet::full(k), vals);
    CHECK(werp.prices == we.prices);
    CHECK(werp.allocation == we.allocation);
  }
}

TEST_CASE("minimum werp prices against competition and reserve") {
  CHECK(min_werp_prices(1, ItemSet::full(1), {ud1(5), ud1(3)}, PriceVector({Rational(1)})) ==
        PriceVector({Rational(3)}));
  CHECK(min_werp_prices(1, ItemSet::full(1), {ud1(5), ud1(3)}, PriceVector({Rational(4)})) ==
        PriceVector({Rational(4)}));
  // no bidders at all: everything stays unsold at its reserve
  CHECK(min_werp_prices(2, ItemSet::full(2), {}, PriceVector({Rational(2), Rational(1)})) ==
        PriceVector({Rational(2), Rational(1)}));
}

TEST_CASE("minimum werp prices match the envy-free price oracle") {
  Rng rng(17);
  for (int round = 0; round < 40; ++round) {
    const int k = rng.range(1, 4);
    const std::vector<Valuation> vals = random_gs_bidders(rng, k, rng.range(1, 3));
    const PriceVector r = random_reserves(rng, k);
    CHECK(min_werp_prices(k, ItemSet::full(k), vals, r) ==
          min_ef_price_oracle(vals, r, ItemSet::full(k)));
  }
}

TEST_CASE("werp round-trips through the augmented economy") {
  Rng rng(23);
  for (int round = 0; round < 30; ++round) {
    const int k = rng.range(1, 4);
    const std::vector<Valuation> vals = random_gs_bidders(rng, k, rng.range(1, 3));
    const PriceVector r = random_reserves(rng, k);
    const ItemSet items = ItemSet::full(k);
    const WerpEquilibrium werp = solve_werp(k, items, vals, r);

    // forward: hand the unsold items to the additive player; the result
    // must be envy-free for everyone and leave nothing unsold above price 0
    const auto augmented = augment_with_additive_player(vals, r);
    std::map<int, ItemSet> sets;
    for (const auto& [b, s] : werp.allocation.entries()) sets[b] = s;
    sets[static_cast<int>(vals.size())] = items - werp.allocation.union_all();
    const Allocation lifted(std::move(sets));
    CHECK(check_envy_free(augmented, lifted, werp.prices, items).envy_free());

    // backward: a plain equilibrium of the augmented economy maps to a werp
    const WalrasianEquilibrium we = solve_we(k, items, augmented);
    std::map<int, ItemSet> real;
    for (std::size_t b = 0; b < vals.size(); ++b) real[static_cast<int>(b)] = we.allocation.set_of(static_cast<int>(b));
    const Allocation mapped(std::move(real));
    std::vector<Rational> mapped_prices;
    for (int j = 0; j < k; ++j) mapped_prices.push_back(max(we.prices[j], r[j]));
    const PriceVector mp(std::move(mapped_prices));
    std::string why;
    CHECK(is_werp_price(k, items, vals, r, mp, &why));
    CHECK(check_envy_free(vals, mapped, mp, items).envy_free());
  }
}

TEST_CASE("werp-supportable allocations are exactly the reserve-welfare maximizers") {
  Rng rng(29);
  for (int round = 0; round < 20; ++round) {
    const int k = rng.range(1, 3);
    const int n = rng.range(1, 3);
    const std::vector<Valuation> vals = random_gs_bidders(rng, k, n);
    const PriceVector r = random_reserves(rng, k);
    const ItemSet items = ItemSet::full(k);
    const PriceVector pmin = min_werp_prices(k, items, vals, r);

    // exhaust all allocations; objective = welfare + reserves of unsold
    Rational best(-1);
    std::vector<std::pair<Allocation, Rational>> all;
    std::vector<std::size_t> assign(static_cast<std::size_t>(k), 0);
    while (true) {
      std::map<int, ItemSet> sets;
      for (int b = 0; b < n; ++b) sets[b] = ItemSet();
      for (int t = 0; t < k; ++t) {
        if (assign[static_cast<std::size_t>(t)] < static_cast<std::size_t>(n)) {
          auto& dst = sets[static_cast<int>(assign[static_cast<std::size_t>(t)])];
          dst = dst.with(t);
        }
      }
      Allocation alloc(std::move(sets));
      Rational objective = r.sum_over(items - alloc.union_all());
      for (int b = 0; b < n; ++b) objective += vals[static_cast<std::size_t>(b)].value(alloc.set_of(b));
      best = max(best, objective);
      all.emplace_back(std::move(alloc), std::move(objective));
      std::size_t t = assign.size();
      bool overflow = true;
      while (t > 0) {
        --t;
        if (++assign[t] <= static_cast<std::size_t>(n)) {
          overflow = false;
          break;
        }
        assign[t] = 0;
      }
      if (overflow) break;
    }

    for (const auto& [alloc, objective] : all) {
      // supportable at the minimum werp prices: envy-free + unsold at reserve
      bool supported = check_envy_free(vals, alloc, pmin, items).envy_free();
      for (int j : (items - alloc.union_all()).items()) {
        supported = supported && pmin[j] == r[j];
      }
      CHECK(supported == (objective == best));
    }
  }
}

TEST_CASE("lattice meet and join of sampled werp vectors") {
  Rng rng(31);
  for (int round = 0; round < 20; ++round) {
    const int k = rng.range(1, 4);
    const std::vector<Valuation> vals = random_gs_bidders(rng, k, rng.range(1, 3));
    const PriceVector r = random_reserves(rng, k);
    const ItemSet items = ItemSet::full(k);
    const PriceVector lo = min_werp_prices(k, items, vals, r);
    const PriceVector hi = max_werp_prices(k, items, vals, r);
    CHECK(leq(lo, hi));

    CHECK(werp_lattice_meet(lo, lo, k, items, vals, r) == lo);  // idempotent
    CHECK(werp_lattice_meet(lo, hi, k, items, vals, r) == lo);
    CHECK(werp_lattice_join(lo, hi, k, items, vals, r) == hi);

    // random rational convex combination, re-verified for membership
    const Rational lambda(rng.range(0, 4), 4);
    std::vector<Rational> mix;
    for (int j = 0; j < k; ++j) {
      mix.push_back(lambda * lo[j] + (Rational(1) - lambda) * hi[j]);
    }
    const PriceVector blended(std::move(mix));
    std::string why;
    REQUIRE(is_werp_price(k, items, vals, r, blended, &why));
    CHECK(leq(lo, werp_lattice_meet(blended, hi, k, items, vals, r)));
  }
}

TEST_CASE("fewer items never have cheaper minimum prices") {
  // p^T <= p^S on S for S inside T; equality when everything T sells lives in S
  Rng rng(37);
  for (int round = 0; round < 25; ++round) {
    const int k = rng.range(2, 4);
    const std::vector<Valuation> vals = random_gs_bidders(rng, k, rng.range(1, 3));
    const PriceVector r = random_reserves(rng, k);
    const ItemSet t_set = ItemSet::full(k);
    for_each_subset(t_set, [&](ItemSet s) {
      // oracle prices on the subset against solver prices on the full set
      const PriceVector ps = min_ef_price_oracle(vals, r, s);
      const WerpEquilibrium on_t = solve_werp(k, t_set, vals, r);
      for (int j : s.items()) {
        CHECK(on_t.prices[j] <= ps[j]);
      }
      if (on_t.allocation.union_all().subset_of(s)) {
        for (int j : s.items()) CHECK(on_t.prices[j] == ps[j]);
      }
    });
  }
}
