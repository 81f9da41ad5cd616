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
#include "adex/verify.hpp"
#include "adex/walrasian.hpp"

using namespace adex;

namespace {

std::vector<Valuation> random_gs_bidders(Rng& rng, int k, int n) {
  std::vector<Valuation> vals;
  for (int b = 0; b < n; ++b) vals.push_back(random_valuation(rng, k, "mixed"));
  return vals;
}

/// The no-equilibrium fixture: a single-minded pair bidder against a
/// unit-demand bidder who forces both singleton prices up.
std::vector<Valuation> no_we_fixture() {
  return {Valuation::explicit_table(2, {Rational(0), Rational(0), Rational(0), Rational(3)}),
          Valuation::unit_demand({Rational(2), Rational(2)})};
}

}  // namespace

TEST_CASE("minimum prices for the competition example") {
  const std::vector<Valuation> vals = {Valuation::unit_demand({Rational(5)}),
                                       Valuation::unit_demand({Rational(3)})};
  CHECK(min_walrasian_prices(1, ItemSet::full(1), vals) == PriceVector({Rational(3)}));
}

TEST_CASE("a lone bidder pays nothing") {
  CHECK(min_walrasian_prices(1, ItemSet::full(1), {Valuation::unit_demand({Rational(5)})}) ==
        PriceVector({Rational(0)}));
  // the additive case that separates the perfect-substitute duplicate from
  // naive array extension: a second copy of an item adds nothing
  CHECK(min_walrasian_prices(2, ItemSet::full(2),
                             {Valuation::additive({Rational(4), Rational(1)})}) ==
        PriceVector({Rational(0), Rational(0)}));
}

TEST_CASE("solve_we returns a checked equilibrium") {
  const std::vector<Valuation> vals = {Valuation::unit_demand({Rational(5)}),
                                       Valuation::unit_demand({Rational(3)})};
  const WalrasianEquilibrium we = solve_we(1, ItemSet::full(1), vals);
  CHECK(we.allocation.set_of(0) == ItemSet::of({0}));
  CHECK(we.prices == PriceVector({Rational(3)}));
  CHECK(check_envy_free(vals, we.allocation, we.prices, ItemSet::full(1)).envy_free());

  const WalrasianEquilibrium empty = solve_we(2, ItemSet(), vals);
  CHECK(empty.allocation.union_all() == ItemSet());
}

TEST_CASE("complements without an equilibrium are reported") {
  CHECK_THROWS_AS(solve_we(2, ItemSet::full(2), no_we_fixture()), NoWalrasianEquilibrium);
  // the price polytope is empty for the (unique) welfare-maximal allocation
  const WelfareSolution ws = brute_welfare_solution(ItemSet::full(2), no_we_fixture());
  CHECK_THROWS_AS(min_price_lp(ItemSet::full(2), no_we_fixture(), ws.allocation,
                               PriceVector::zero(2)),
                  InfeasibleLp);
}

TEST_CASE("gs instances always clear and match the lp oracle") {
  Rng rng(7);
  for (int round = 0; round < 50; ++round) {
    const int k = rng.range(1, 4);
    const int n = rng.range(1, 4);
    const std::vector<Valuation> vals = random_gs_bidders(rng, k, n);
    const ItemSet items = ItemSet::full(k);
    PriceVector p;
    REQUIRE_NOTHROW(p = min_walrasian_prices(k, items, vals));
    const WelfareSolution ws = max_welfare(items, vals);
    CHECK(p == min_price_lp(items, vals, ws.allocation, PriceVector::zero(k)));
    CHECK(ws.welfare == brute_welfare(items, vals));
  }
}

TEST_CASE("minimum prices sit below the maximum prices and support every optimum") {
  Rng rng(404);
  for (int round = 0; round < 30; ++round) {
    const int k = rng.range(1, 4);
    const std::vector<Valuation> vals = random_gs_bidders(rng, k, rng.range(1, 4));
    const ItemSet items = ItemSet::full(k);
    const PriceVector lo = min_walrasian_prices(k, items, vals);
    const PriceVector hi = max_walrasian_prices(k, items, vals);
    CHECK(leq(lo, hi));

    // every exhaustively-found optimal allocation is supported by lo
    const Rational opt = brute_welfare(items, vals);
    const std::size_t n = vals.size();
    std::vector<std::size_t> assign(static_cast<std::size_t>(k), 0);
    while (true) {
      std::map<int, ItemSet> sets;
      for (std::size_t b = 0; b < n; ++b) sets[static_cast<int>(b)] = ItemSet();
      for (int t = 0; t < k; ++t) {
        if (assign[static_cast<std::size_t>(t)] < n) {
          auto& dst = sets[static_cast<int>(assign[static_cast<std::size_t>(t)])];
          dst = dst.with(t);
        }
      }
      const Allocation alloc{std::map<int, ItemSet>(sets)};
      Rational welfare;
      for (std::size_t b = 0; b < n; ++b) {
        welfare += vals[b].value(alloc.set_of(static_cast<int>(b)));
      }
      if (welfare == opt) {
        // complementary slackness: positively priced items are sold in
        // every optimum, and the minimum prices support every optimum
        const ItemSet unsold = items - alloc.union_all();
        for (int j : unsold.items()) CHECK(lo[j].is_zero());
        CHECK(check_envy_free(vals, alloc, lo, items).envy_free());
      }
      std::size_t t = assign.size();
      bool overflow = true;
      while (t > 0) {
        --t;
        if (++assign[t] <= n) {
          overflow = false;
          break;
        }
        assign[t] = 0;
      }
      if (overflow) break;
    }
  }
}
