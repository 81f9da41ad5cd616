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
#include "adex/pipeline.hpp"
#include "adex/verify.hpp"

using namespace adex;

namespace {

Valuation ud(std::vector<long> values) {
  std::vector<Rational> r;
  for (long v : values) r.push_back(Rational(v));
  return Valuation::unit_demand(std::move(r));
}

/// One item, mediator A with bidders {5, 3}, mediator B with one bidder.
Instance one_item_instance(long b_value) {
  return Instance(1,
                  {{0, ud({5})}, {1, ud({3})}, {2, ud({b_value})}},
                  {{0, {0, 1}}, {1, {2}}});
}

Instance random_instance(Rng& rng, int max_k, int max_m, int per_mediator) {
  GenParams params;
  params.seed = rng.next();
  params.num_items = rng.range(1, max_k);
  params.num_mediators = rng.range(1, max_m);
  params.num_bidders = params.num_mediators * rng.range(1, per_mediator);
  params.mix = "mixed";
  return generate_instance(params);
}

}  // namespace

TEST_CASE("strong outside competition hands the mediator zero revenue") {
  const SolveResult res = solve_three_party(one_item_instance(4));
  CHECK(res.verdict.all_pass());
  CHECK(res.certificate.central_prices == PriceVector({Rational(4)}));
  CHECK(res.certificate.mediator_allocation.set_of(0) == ItemSet::of({0}));
  CHECK(res.certificate.local_prices[0] == PriceVector({Rational(4)}));
  CHECK(res.certificate.revenues[0] == Rational(0));
}

TEST_CASE("weak outside competition leaves the mediator a margin") {
  const SolveResult res = solve_three_party(one_item_instance(2));
  CHECK(res.certificate.central_prices == PriceVector({Rational(2)}));
  CHECK(res.certificate.local_prices[0] == PriceVector({Rational(3)}));
  CHECK(res.certificate.revenues[0] == Rational(1));
  CHECK(res.certificate.bidder_allocation.set_of(0) == ItemSet::of({0}));
}

TEST_CASE("a single mediator holding everyone pays nothing centrally") {
  const Instance inst(1, {{0, ud({5})}, {1, ud({3})}}, {{0, {0, 1}}});
  const SolveResult res = solve_three_party(inst);
  CHECK(res.certificate.central_prices == PriceVector({Rational(0)}));
  CHECK(res.certificate.local_prices[0] == PriceVector({Rational(3)}));
  CHECK(res.certificate.revenues[0] == Rational(3));
}

TEST_CASE("tampered certificates fail the named requirement") {
  const Instance inst = one_item_instance(2);
  const SolveResult res = solve_three_party(inst);

  // lower the winning mediator's local price below the envy-free minimum
  EquilibriumCertificate lowered = res.certificate;
  lowered.local_prices[0] = PriceVector({Rational(1)});
  const EquilibriumVerdict v1 = check_equilibrium(inst, lowered);
  CHECK_FALSE(v1.bidders_envy_free);
  REQUIRE_FALSE(v1.failures.empty());
  CHECK(v1.failures.front().find("requirement 4") != std::string::npos);
  CHECK(v1.failures.front().find("bidder 1") != std::string::npos);  // the loser envies

  // hand the item to the weaker mediator instead
  EquilibriumCertificate moved = res.certificate;
  moved.mediator_allocation = Allocation({{1, ItemSet::of({0})}});
  moved.bidder_allocation = Allocation({{2, ItemSet::of({0})}});
  moved.local_prices[0] = moved.central_prices;
  moved.local_prices[1] = PriceVector({Rational(2)});
  const EquilibriumVerdict v2 = check_equilibrium(inst, moved);
  CHECK_FALSE(v2.mediator_sets_demanded);

  // stash a positive central price on an item no mediator holds
  const Instance two(2, {{0, ud({5, 0})}, {1, ud({3, 0})}}, {{0, {0, 1}}});
  const SolveResult sol2 = solve_three_party(two);
  EquilibriumCertificate priced = sol2.certificate;
  priced.central_prices = priced.central_prices.with(1, Rational(1));
  priced.mediator_allocation = Allocation({{0, ItemSet::of({0})}});
  priced.bidder_allocation = Allocation({{0, ItemSet::of({0})}});
  const EquilibriumVerdict v3 = check_equilibrium(two, priced);
  CHECK_FALSE(v3.positive_priced_items_allocated);

  // a losing mediator whose price vector diverges from r on a foreign item
  EquilibriumCertificate diverged = res.certificate;
  diverged.local_prices[1] = PriceVector({Rational(5)});
  const EquilibriumVerdict v4 = check_equilibrium(inst, diverged);
  CHECK_FALSE(v4.local_prices_extend_central);
}

TEST_CASE("trivial equilibrium from the bidder-level one") {
  Rng rng(64);
  for (int round = 0; round < 10; ++round) {
    const Instance inst = random_instance(rng, 4, 3, 3);
    const SolveResult res = trivial_equilibrium_from_we(inst);
    CHECK(res.verdict.all_pass());
    for (const Rational& rev : res.certificate.revenues) CHECK(rev == Rational(0));
    // all m+1 price vectors are identical
    for (const PriceVector& p : res.certificate.local_prices) {
      CHECK(p == res.certificate.central_prices);
    }
    // mediator sets are the unions of their bidders' sets
    for (const MediatorGroup& g : inst.mediators()) {
      ItemSet u;
      for (int b : g.bidder_ids) u = u | res.certificate.bidder_allocation.set_of(b);
      CHECK(res.certificate.mediator_allocation.set_of(g.id) == u);
    }
  }
}

TEST_CASE("three-party equilibrium on random gs instances") {
  Rng rng(4096);
  for (int round = 0; round < 12; ++round) {
    const Instance inst = random_instance(rng, 4, 3, 3);
    const SolveResult res = solve_three_party(inst);
    CHECK(res.verdict.all_pass());

    // minimum-price relation
    const MinPriceRelationResult rel = check_min_price_relation(inst, res.certificate);
    CHECK(rel.passed);

    // bidder utilities equal their utilities at the bidder-level minimum prices
    const PriceVector q = rel.bidder_min_prices;
    for (const Bidder& b : inst.bidders()) {
      const PriceVector& local =
          res.certificate.local_prices[static_cast<std::size_t>(inst.mediator_of(b.id))];
      const ItemSet held = res.certificate.bidder_allocation.set_of(b.id);
      const Rational utility = b.valuation.value(held) - local.sum_over(held);
      CHECK(utility == b.valuation.demand(q).max_utility);
    }

    // seller revenue plus mediator revenues equals what the bidders pay
    Rational seller = res.certificate.central_prices.sum_over(
        res.certificate.mediator_allocation.union_all());
    for (const Rational& rev : res.certificate.revenues) seller += rev;
    Rational paid;
    for (const Bidder& b : inst.bidders()) {
      const PriceVector& local =
          res.certificate.local_prices[static_cast<std::size_t>(inst.mediator_of(b.id))];
      paid += local.sum_over(res.certificate.bidder_allocation.set_of(b.id));
    }
    CHECK(seller == paid);
  }
}

TEST_CASE("mediator hierarchies preserve prices and welfare") {
  Rng rng(12321);
  for (int round = 0; round < 6; ++round) {
    GenParams params;
    params.seed = rng.next();
    params.num_items = rng.range(1, 3);
    params.num_mediators = 4;
    params.num_bidders = rng.range(4, 8);
    params.mix = "mixed";
    const Instance flat = generate_instance(params);

    CHECK(build_mediator_hierarchy(flat, 1, 2).num_mediators() == 4);
    const Instance wrapped = build_mediator_hierarchy(flat, 2, 2);
    REQUIRE(wrapped.num_mediators() == 2);
    const Instance single = build_mediator_hierarchy(flat, 3, 2);
    REQUIRE(single.num_mediators() == 1);

    const SolveResult direct = solve_three_party(flat);
    const SolveResult via2 = solve_three_party(wrapped);
    const SolveResult via1 = solve_three_party(single);

    const MinPriceRelationResult rd = check_min_price_relation(flat, direct.certificate);
    const MinPriceRelationResult r2 = check_min_price_relation(wrapped, via2.certificate);
    const MinPriceRelationResult r1 = check_min_price_relation(single, via1.certificate);
    CHECK(rd.passed);
    CHECK(r2.passed);
    CHECK(r1.passed);
    // the bidder-facing price vector is invariant under the hierarchy
    CHECK(rd.max_local_prices == r2.max_local_prices);
    CHECK(rd.max_local_prices == r1.max_local_prices);

    auto total_value = [&](const Instance& inst, const EquilibriumCertificate& cert) {
      Rational total;
      for (const Bidder& b : inst.bidders()) {
        total += b.valuation.value(cert.bidder_allocation.set_of(b.id));
      }
      return total;
    };
    const Rational w = brute_welfare(flat.universe(), flat.all_valuations());
    CHECK(total_value(flat, direct.certificate) == w);
    CHECK(total_value(wrapped, via2.certificate) == w);
    CHECK(total_value(single, via1.certificate) == w);
  }
}

TEST_CASE("hierarchy parameters are validated") {
  const Instance inst = one_item_instance(2);
  CHECK_THROWS_AS(build_mediator_hierarchy(inst, 0, 2), ValidationError);
  CHECK_THROWS_AS(build_mediator_hierarchy(inst, 2, 0), ValidationError);
}
