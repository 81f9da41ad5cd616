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
#include "adex/io.hpp"
#include "adex/pipeline.hpp"

using namespace adex;

TEST_CASE("instances round-trip canonically") {
  Rng rng(91);
  for (int round = 0; round < 15; ++round) {
    GenParams params;
    params.seed = rng.next();
    params.num_items = rng.range(1, 5);
    params.num_mediators = rng.range(1, 3);
    params.num_bidders = params.num_mediators + rng.range(0, 4);
    params.mix = "mixed";
    const Instance inst = generate_instance(params);
    const std::string once = io::print_instance(inst);
    const std::string twice = io::print_instance(io::parse_instance(once));
    CHECK(once == twice);
  }
}

TEST_CASE("non-canonical spellings parse and canonicalize") {
  const std::string text = R"({
    "num_items": 1,
    "bidders": [
      {"id": 0, "valuation": {"type": "unit_demand", "values": [5]}},
      {"id": 1, "valuation": {"type": "additive", "values": ["6/2"]}}
    ],
    "mediators": [{"id": 0, "bidders": [0, 1]}]
  })";
  const Instance inst = io::parse_instance(text);
  CHECK(inst.bidders()[1].valuation.value(ItemSet::of({0})) == Rational(3));
  const std::string canonical = io::print_instance(inst);
  CHECK(canonical.find("\"3\"") != std::string::npos);  // 6/2 reduced
  CHECK(io::print_instance(io::parse_instance(canonical)) == canonical);
}

TEST_CASE("explicit and or valuations survive the round trip") {
  const Valuation table =
      Valuation::explicit_table(2, {Rational(0), Rational(1), Rational(1), Rational(1)});
  const Valuation orv = or_player({Valuation::unit_demand({Rational(1), Rational(2)}),
                                   Valuation::unit_demand({Rational(2), Rational(1)})});
  const Instance inst(2, {{0, table}, {1, orv}}, {{0, {0, 1}}});
  const Instance back = io::parse_instance(io::print_instance(inst));
  for_each_subset(ItemSet::full(2), [&](ItemSet s) {
    CHECK(back.bidders()[0].valuation.value(s) == table.value(s));
    CHECK(back.bidders()[1].valuation.value(s) == orv.value(s));
  });
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_WITH(io::parse_instance("{"), Catch::Matchers::ContainsSubstring("instance:"));
  CHECK_THROWS_WITH(
      io::parse_instance(R"({"num_items": 1, "bidders": [
        {"id": 0, "valuation": {"type": "unit_demand", "values": ["1/0"]}}],
        "mediators": [{"id": 0, "bidders": [0]}]})"),
      Catch::Matchers::ContainsSubstring("bidders[0]"));
  CHECK_THROWS_WITH(
      io::parse_instance(R"({"num_items": 1, "bidders": [
        {"id": 0, "valuation": {"type": "warp", "values": ["1"]}}],
        "mediators": [{"id": 0, "bidders": [0]}]})"),
      Catch::Matchers::ContainsSubstring("unknown valuation type"));

  // non-monotone explicit table is rejected at parse time
  CHECK_THROWS_AS(
      io::parse_instance(R"({"num_items": 1, "bidders": [
        {"id": 0, "valuation": {"type": "explicit", "table": [
          {"items": [], "value": "0"}, {"items": [0], "value": "-1"}]}}],
        "mediators": [{"id": 0, "bidders": [0]}]})"),
      ValidationError);
}

TEST_CASE("certificates round-trip with their verdicts") {
  const Instance inst(1,
                      {{0, Valuation::unit_demand({Rational(5)})},
                       {1, Valuation::unit_demand({Rational(3)})},
                       {2, Valuation::unit_demand({Rational(2)})}},
                      {{0, {0, 1}}, {1, {2}}});
  const SolveResult res = solve_three_party(inst);
  io::CertificateDocument doc;
  doc.certificate = res.certificate;
  doc.verdict = res.verdict;
  doc.min_price_relation_checked = true;
  doc.min_price_relation_passed = true;
  const std::string text = io::print_certificate(doc);
  const io::CertificateDocument back = io::parse_certificate(text);
  CHECK(back.certificate.central_prices == res.certificate.central_prices);
  CHECK(back.certificate.bidder_allocation == res.certificate.bidder_allocation);
  CHECK(back.certificate.kind == CertificateKind::kThreeParty);
  CHECK(back.certificate.revenues == res.certificate.revenues);

  // re-checking the parsed certificate passes
  CHECK(check_equilibrium(inst, back.certificate).all_pass());

  // timings stay out of the canonical form
  CHECK(text.find("timings") == std::string::npos);
  io::CertificateDocument timed = doc;
  timed.timings_ms["solve"] = 12;
  CHECK(io::print_certificate(timed, true).find("timings_ms") != std::string::npos);
}
