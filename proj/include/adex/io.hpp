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
// Instance and certificate files: JSON documents with rationals encoded as
// "num" or "num/den" strings (integers are accepted as shorthand on input).
// Printing is canonical — fixed field order, 2-space indent, ascending ids —
// so parse-then-print is idempotent and certificates are byte-reproducible.

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adex/allocation.hpp"
#include "adex/errors.hpp"
#include "adex/instance.hpp"
#include "adex/pipeline.hpp"
#include "adex/prices.hpp"
#include "adex/rational.hpp"
#include "adex/valuation.hpp"

namespace adex {
namespace io {

using Json = nlohmann::ordered_json;

namespace detail {

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const ValidationError& err) {
      throw ValidationError(where + ": " + err.what());
    }
  }
  throw ValidationError(where + ": expected an integer or a \"num/den\" string");
}

inline std::vector<Rational> rationals_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (std::size_t t = 0; t < j.size(); ++t) {
    out.push_back(rational_from_json(j[t], where + "[" + std::to_string(t) + "]"));
  }
  return out;
}

inline Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const Rational& v : values) out.push_back(v.str());
  return out;
}

inline ItemSet itemset_from_json(const Json& j, int num_items, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array of item indices");
  ItemSet s;
  for (const Json& e : j) {
    if (!e.is_number_integer()) throw ValidationError(where + ": item index must be an integer");
    const int item = e.get<int>();
    if (item < 0 || item >= num_items) {
      throw ValidationError(where + ": item index " + std::to_string(item) + " out of range");
    }
    s = s.with(item);
  }
  return s;
}

inline Json itemset_to_json(ItemSet s) {
  Json out = Json::array();
  for (int j : s.items()) out.push_back(j);
  return out;
}

inline Valuation valuation_from_json(const Json& j, int num_items, const std::string& where) {
  if (!j.is_object() || !j.contains("type")) {
    throw ValidationError(where + ": expected a valuation object with a \"type\"");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "unit_demand" || type == "additive") {
    const std::vector<Rational> values =
        rationals_from_json(j.at("values"), where + ".values");
    if (static_cast<int>(values.size()) != num_items) {
      throw ValidationError(where + ".values: expected " + std::to_string(num_items) +
                            " entries");
    }
    return type == "unit_demand" ? Valuation::unit_demand(values) : Valuation::additive(values);
  }
  if (type == "explicit") {
    const Json& table = j.at("table");
    if (!table.is_array()) throw ValidationError(where + ".table: expected an array");
    std::vector<std::optional<Rational>> seen(std::size_t{1} << num_items);
    for (std::size_t t = 0; t < table.size(); ++t) {
      const std::string entry = where + ".table[" + std::to_string(t) + "]";
      const Json& row = table[t];
      if (!row.is_object() || !row.contains("items") || !row.contains("value")) {
        throw ValidationError(entry + ": expected {\"items\": [...], \"value\": ...}");
      }
      const ItemSet s = itemset_from_json(row.at("items"), num_items, entry + ".items");
      if (seen[s.bits()].has_value()) {
        throw ValidationError(entry + ": duplicate entry for subset " + s.str());
      }
      seen[s.bits()] = rational_from_json(row.at("value"), entry + ".value");
    }
    std::vector<Rational> values;
    values.reserve(seen.size());
    for (std::size_t s = 0; s < seen.size(); ++s) {
      if (!seen[s].has_value()) {
        throw ValidationError(where + ".table: missing entry for subset " + ItemSet(s).str() +
                              " (tables must be total)");
      }
      values.push_back(std::move(*seen[s]));
    }
    return Valuation::explicit_table(num_items, std::move(values));
  }
  if (type == "or") {
    const Json& children = j.at("children");
    if (!children.is_array() || children.empty()) {
      throw ValidationError(where + ".children: expected a non-empty array");
    }
    std::vector<Valuation> parsed;
    for (std::size_t c = 0; c < children.size(); ++c) {
      parsed.push_back(valuation_from_json(children[c], num_items,
                                           where + ".children[" + std::to_string(c) + "]"));
    }
    return Valuation::or_of(std::move(parsed));
  }
  throw ValidationError(where + ": unknown valuation type \"" + type + "\"");
}

inline Json valuation_to_json(const Valuation& v) {
  Json out = Json::object();
  switch (v.kind()) {
    case ValuationKind::kUnitDemand:
      out["type"] = "unit_demand";
      out["values"] = rationals_to_json(v.item_values());
      break;
    case ValuationKind::kAdditive:
      out["type"] = "additive";
      out["values"] = rationals_to_json(v.item_values());
      break;
    case ValuationKind::kExplicit: {
      out["type"] = "explicit";
      Json table = Json::array();
      const std::uint64_t size = std::uint64_t{1} << v.num_items();
      for (std::uint64_t s = 0; s < size; ++s) {
        Json row = Json::object();
        row["items"] = itemset_to_json(ItemSet(s));
        row["value"] = v.value(ItemSet(s)).str();
        table.push_back(std::move(row));
      }
      out["table"] = std::move(table);
      break;
    }
    case ValuationKind::kOr: {
      out["type"] = "or";
      Json children = Json::array();
      for (const Valuation& c : v.children()) children.push_back(valuation_to_json(c));
      out["children"] = std::move(children);
      break;
    }
  }
  return out;
}

inline Json parse_document(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError(what + ": " + err.what());
  }
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
  const Json doc = detail::parse_document(text, "instance");
  if (!doc.is_object() || !doc.contains("num_items") || !doc.contains("bidders") ||
      !doc.contains("mediators")) {
    throw ValidationError("instance: expected num_items, bidders, and mediators");
  }
  if (!doc.at("num_items").is_number_integer()) {
    throw ValidationError("instance.num_items: expected an integer");
  }
  const int num_items = doc.at("num_items").get<int>();
  if (num_items < 0 || num_items > ItemSet::kMaxItems) {
    throw ValidationError("instance.num_items: out of range");
  }

  std::vector<Bidder> bidders;
  const Json& jb = doc.at("bidders");
  if (!jb.is_array()) throw ValidationError("instance.bidders: expected an array");
  for (std::size_t b = 0; b < jb.size(); ++b) {
    const std::string where = "instance.bidders[" + std::to_string(b) + "]";
    const Json& row = jb[b];
    if (!row.is_object() || !row.contains("id") || !row.contains("valuation")) {
      throw ValidationError(where + ": expected {\"id\", \"valuation\"}");
    }
    bidders.push_back({row.at("id").get<int>(),
                       detail::valuation_from_json(row.at("valuation"), num_items,
                                                   where + ".valuation")});
  }

  std::vector<MediatorGroup> mediators;
  const Json& jm = doc.at("mediators");
  if (!jm.is_array()) throw ValidationError("instance.mediators: expected an array");
  for (std::size_t m = 0; m < jm.size(); ++m) {
    const std::string where = "instance.mediators[" + std::to_string(m) + "]";
    const Json& row = jm[m];
    if (!row.is_object() || !row.contains("id") || !row.contains("bidders")) {
      throw ValidationError(where + ": expected {\"id\", \"bidders\"}");
    }
    MediatorGroup group;
    group.id = row.at("id").get<int>();
    for (const Json& e : row.at("bidders")) group.bidder_ids.push_back(e.get<int>());
    mediators.push_back(std::move(group));
  }
  return Instance(num_items, std::move(bidders), std::move(mediators));
}

inline std::string print_instance(const Instance& instance) {
  Json doc = Json::object();
  doc["num_items"] = instance.num_items();
  Json bidders = Json::array();
  for (const Bidder& b : instance.bidders()) {
    Json row = Json::object();
    row["id"] = b.id;
    row["valuation"] = detail::valuation_to_json(b.valuation);
    bidders.push_back(std::move(row));
  }
  doc["bidders"] = std::move(bidders);
  Json mediators = Json::array();
  for (const MediatorGroup& m : instance.mediators()) {
    Json row = Json::object();
    row["id"] = m.id;
    row["bidders"] = m.bidder_ids;
    mediators.push_back(std::move(row));
  }
  doc["mediators"] = std::move(mediators);
  return doc.dump(2) + "\n";
}

namespace detail {

inline const char* kind_name(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kThreeParty: return "three_party_min_prices";
    case CertificateKind::kThreePartyMaxPrices: return "three_party_max_prices";
    case CertificateKind::kTrivial: return "trivial";
  }
  return "three_party_min_prices";
}

inline CertificateKind kind_from_name(const std::string& name) {
  if (name == "three_party_min_prices") return CertificateKind::kThreeParty;
  if (name == "three_party_max_prices") return CertificateKind::kThreePartyMaxPrices;
  if (name == "trivial") return CertificateKind::kTrivial;
  throw ValidationError("certificate.kind: unknown kind \"" + name + "\"");
}

inline Json allocation_to_json(const Allocation& alloc, const char* field) {
  Json out = Json::array();
  for (const auto& [id, set] : alloc.entries()) {
    Json row = Json::object();
    row[field] = id;
    row["items"] = itemset_to_json(set);
    out.push_back(std::move(row));
  }
  return out;
}

inline Allocation allocation_from_json(const Json& j, int num_items, const char* field,
                                       const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  std::map<int, ItemSet> sets;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string entry = where + "[" + std::to_string(t) + "]";
    const Json& row = j[t];
    if (!row.is_object() || !row.contains(field) || !row.contains("items")) {
      throw ValidationError(entry + ": expected {\"" + field + "\", \"items\"}");
    }
    const int id = row.at(field).get<int>();
    if (sets.count(id)) throw ValidationError(entry + ": duplicate id");
    sets[id] = itemset_from_json(row.at("items"), num_items, entry + ".items");
  }
  try {
    return Allocation(std::move(sets));
  } catch (const ValidationError& err) {
    throw ValidationError(where + ": " + err.what());
  }
}

}  // namespace detail

struct CertificateDocument {
  EquilibriumCertificate certificate;
  EquilibriumVerdict verdict;
  bool min_price_relation_checked = false;
  bool min_price_relation_passed = false;
  bool oracle_agreement_checked = false;
  bool oracle_agreement_passed = false;
  std::map<std::string, long> timings_ms;  // emitted only when requested
};

inline std::string print_certificate(const CertificateDocument& doc, bool with_timings = false) {
  const EquilibriumCertificate& cert = doc.certificate;
  Json out = Json::object();
  out["num_items"] = cert.num_items;
  out["kind"] = detail::kind_name(cert.kind);
  out["central_prices"] = detail::rationals_to_json(cert.central_prices.entries());
  out["mediator_allocation"] = detail::allocation_to_json(cert.mediator_allocation, "mediator");
  Json locals = Json::array();
  for (std::size_t i = 0; i < cert.local_prices.size(); ++i) {
    Json row = Json::object();
    row["mediator"] = static_cast<int>(i);
    row["prices"] = detail::rationals_to_json(cert.local_prices[i].entries());
    locals.push_back(std::move(row));
  }
  out["local_prices"] = std::move(locals);
  out["bidder_allocation"] = detail::allocation_to_json(cert.bidder_allocation, "bidder");
  Json revenues = Json::array();
  for (std::size_t i = 0; i < cert.revenues.size(); ++i) {
    Json row = Json::object();
    row["mediator"] = static_cast<int>(i);
    row["revenue"] = cert.revenues[i].str();
    revenues.push_back(std::move(row));
  }
  out["revenues"] = std::move(revenues);

  Json checks = Json::object();
  checks["mediator_sets_demanded"] = doc.verdict.mediator_sets_demanded;
  checks["positive_priced_items_allocated"] = doc.verdict.positive_priced_items_allocated;
  checks["local_prices_extend_central"] = doc.verdict.local_prices_extend_central;
  checks["bidders_envy_free"] = doc.verdict.bidders_envy_free;
  if (doc.min_price_relation_checked) {
    checks["min_price_relation"] = doc.min_price_relation_passed;
  }
  if (doc.oracle_agreement_checked) {
    checks["oracle_agreement"] = doc.oracle_agreement_passed;
  }
  out["checks"] = std::move(checks);

  if (with_timings) {
    Json timings = Json::object();
    for (const auto& [name, ms] : doc.timings_ms) timings[name] = ms;
    out["timings_ms"] = std::move(timings);
  }
  return out.dump(2) + "\n";
}

inline CertificateDocument parse_certificate(const std::string& text) {
  const Json j = detail::parse_document(text, "certificate");
  if (!j.is_object() || !j.contains("num_items") || !j.contains("central_prices") ||
      !j.contains("mediator_allocation") || !j.contains("local_prices") ||
      !j.contains("bidder_allocation") || !j.contains("revenues")) {
    throw ValidationError("certificate: missing required fields");
  }
  CertificateDocument doc;
  EquilibriumCertificate& cert = doc.certificate;
  cert.num_items = j.at("num_items").get<int>();
  if (cert.num_items < 0 || cert.num_items > ItemSet::kMaxItems) {
    throw ValidationError("certificate.num_items: out of range");
  }
  cert.kind = j.contains("kind") ? detail::kind_from_name(j.at("kind").get<std::string>())
                                 : CertificateKind::kThreeParty;
  cert.central_prices = PriceVector(
      detail::rationals_from_json(j.at("central_prices"), "certificate.central_prices"));
  cert.mediator_allocation = detail::allocation_from_json(
      j.at("mediator_allocation"), cert.num_items, "mediator", "certificate.mediator_allocation");
  const Json& locals = j.at("local_prices");
  if (!locals.is_array()) throw ValidationError("certificate.local_prices: expected an array");
  for (std::size_t t = 0; t < locals.size(); ++t) {
    const std::string where = "certificate.local_prices[" + std::to_string(t) + "]";
    const Json& row = locals[t];
    if (!row.is_object() || !row.contains("prices")) {
      throw ValidationError(where + ": expected {\"mediator\", \"prices\"}");
    }
    cert.local_prices.push_back(
        PriceVector(detail::rationals_from_json(row.at("prices"), where + ".prices")));
  }
  cert.bidder_allocation = detail::allocation_from_json(
      j.at("bidder_allocation"), cert.num_items, "bidder", "certificate.bidder_allocation");
  const Json& revenues = j.at("revenues");
  if (!revenues.is_array()) throw ValidationError("certificate.revenues: expected an array");
  for (std::size_t t = 0; t < revenues.size(); ++t) {
    const std::string where = "certificate.revenues[" + std::to_string(t) + "]";
    const Json& row = revenues[t];
    if (!row.is_object() || !row.contains("revenue")) {
      throw ValidationError(where + ": expected {\"mediator\", \"revenue\"}");
    }
    doc.certificate.revenues.push_back(
        detail::rational_from_json(row.at("revenue"), where + ".revenue"));
  }
  return doc;
}

}  // namespace io
}  // namespace adex
