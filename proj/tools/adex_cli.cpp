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
// adex — exact engine for three-party competitive equilibria.
//
//   adex gen    --seed 1 --items 3 --bidders 4 --mediators 2 --mix or
//   adex solve  instance.json [--trivial | --hierarchy D] [--central-prices min|max]
//   adex check  instance.json certificate.json
//   adex bench  --items 2,3 --bidders 4,8
//
// Exit codes: 0 success, 1 parse/validation error, 2 no equilibrium,
// 3 internal oracle disagreement.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "adex/adex.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoEquilibrium = 2;
constexpr int kExitOracleDisagreement = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw adex::ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw adex::ValidationError("cannot write file: " + out_path);
  out << text;
}

long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               start)
      .count();
}

struct SolveOptions {
  std::string instance_path;
  std::string out_path;
  bool trivial = false;
  int hierarchy_depth = 1;
  int fanout = 2;
  std::string central_prices = "min";
  int threads = 1;
  bool timings = false;
  bool skip_oracle_check = false;
};

/// Cross-checks the central duplicate-item prices against the exact LP on
/// the mediator economy, and each local price vector against the minimum
/// envy-free price oracle. Any mismatch is an engine defect.
bool oracle_agreement(const adex::Instance& instance, const adex::EquilibriumCertificate& cert) {
  using namespace adex;
  if (cert.kind == CertificateKind::kThreePartyMaxPrices) return true;  // min-price schemes only
  std::vector<Valuation> mediator_vals;
  for (int i = 0; i < instance.num_mediators(); ++i) {
    mediator_vals.push_back(or_player(instance.member_valuations(i)));
  }
  if (cert.kind == CertificateKind::kThreeParty) {
    const WelfareSolution central = max_welfare(instance.universe(), mediator_vals);
    const PriceVector lp = min_price_lp(instance.universe(), mediator_vals, central.allocation,
                                        PriceVector::zero(instance.num_items()));
    if (!(lp == cert.central_prices)) return false;
    for (int i = 0; i < instance.num_mediators(); ++i) {
      const ItemSet mine = cert.mediator_allocation.set_of(i);
      const PriceVector oracle =
          min_ef_price_oracle(instance.member_valuations(i), cert.central_prices, mine);
      for (int j : mine.items()) {
        if (oracle[j] != cert.local_prices[static_cast<std::size_t>(i)][j]) return false;
      }
    }
    return true;
  }
  // trivial certificate: central prices are the bidder-level minimum prices
  const WelfareSolution ws = max_welfare(instance.universe(), instance.all_valuations());
  const PriceVector lp = min_price_lp(instance.universe(), instance.all_valuations(),
                                      ws.allocation, PriceVector::zero(instance.num_items()));
  return lp == cert.central_prices;
}

int run_solve(const SolveOptions& opt) {
  using namespace adex;
  const auto t0 = std::chrono::steady_clock::now();
  Instance instance = io::parse_instance(read_file(opt.instance_path));
  if (opt.hierarchy_depth > 1) {
    instance = build_mediator_hierarchy(instance, opt.hierarchy_depth, opt.fanout);
  }

  io::CertificateDocument doc;
  const auto t1 = std::chrono::steady_clock::now();
  try {
    if (opt.trivial) {
      SolveResult res = trivial_equilibrium_from_we(instance, opt.threads);
      doc.certificate = std::move(res.certificate);
      doc.verdict = std::move(res.verdict);
    } else {
      const CentralPriceMode mode = opt.central_prices == "max" ? CentralPriceMode::kMaximum
                                                                : CentralPriceMode::kMinimum;
      SolveResult res = solve_three_party(instance, mode, opt.threads);
      doc.certificate = std::move(res.certificate);
      doc.verdict = std::move(res.verdict);
    }
  } catch (const NoWalrasianEquilibrium& err) {
    std::cerr << "no equilibrium: " << err.what() << "\n";
    return kExitNoEquilibrium;
  } catch (const NoWerpEquilibrium& err) {
    std::cerr << "no equilibrium: " << err.what() << "\n";
    return kExitNoEquilibrium;
  } catch (const NoEquilibrium& err) {
    std::cerr << "no equilibrium: " << err.what() << "\n";
    return kExitNoEquilibrium;
  }
  doc.timings_ms["solve"] = elapsed_ms(t1);

  if (doc.certificate.kind != CertificateKind::kThreePartyMaxPrices) {
    const auto t2 = std::chrono::steady_clock::now();
    const MinPriceRelationResult rel = check_min_price_relation(instance, doc.certificate);
    doc.min_price_relation_checked = true;
    doc.min_price_relation_passed = rel.passed;
    doc.timings_ms["min_price_relation"] = elapsed_ms(t2);
  }

  if (!opt.skip_oracle_check) {
    const auto t3 = std::chrono::steady_clock::now();
    doc.oracle_agreement_checked = true;
    doc.oracle_agreement_passed = oracle_agreement(instance, doc.certificate);
    doc.timings_ms["oracle_check"] = elapsed_ms(t3);
  }
  doc.timings_ms["total"] = elapsed_ms(t0);

  write_output(io::print_certificate(doc, opt.timings), opt.out_path);

  if (doc.oracle_agreement_checked && !doc.oracle_agreement_passed) {
    std::cerr << "internal defect: solver prices disagree with the LP oracle\n";
    return kExitOracleDisagreement;
  }
  if (!doc.verdict.all_pass() ||
      (doc.min_price_relation_checked && !doc.min_price_relation_passed)) {
    return kExitNoEquilibrium;
  }
  return kExitOk;
}

int run_check(const std::string& instance_path, const std::string& certificate_path,
              int threads) {
  using namespace adex;
  const Instance instance = io::parse_instance(read_file(instance_path));
  const io::CertificateDocument doc = io::parse_certificate(read_file(certificate_path));

  const EquilibriumVerdict verdict = check_equilibrium(instance, doc.certificate, threads);
  auto line = [](const char* name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
  };
  line("requirement 1: mediator sets demanded at central prices", verdict.mediator_sets_demanded);
  line("requirement 2: positively priced items allocated", verdict.positive_priced_items_allocated);
  line("requirement 3: local prices extend central prices", verdict.local_prices_extend_central);
  line("requirement 4: bidders globally envy-free", verdict.bidders_envy_free);

  bool relation_ok = true;
  if (doc.certificate.kind != CertificateKind::kThreePartyMaxPrices) {
    const MinPriceRelationResult rel = check_min_price_relation(instance, doc.certificate);
    relation_ok = rel.passed;
    line("minimum-price relation: max of local prices equals bidder-level minimum", rel.passed);
  }
  for (const std::string& f : verdict.failures) std::cout << "  " << f << "\n";
  return verdict.all_pass() && relation_ok ? kExitOk : kExitNoEquilibrium;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

int run_bench(const std::string& items_csv, const std::string& bidders_csv, int threads) {
  using namespace adex;
  const std::vector<int> ks = parse_int_list(items_csv);
  const std::vector<int> ns = parse_int_list(bidders_csv);
  std::cout << "  k    n   direct_ms  hierarchy_ms  smallk_ms  welfare_agreement\n";
  for (int k : ks) {
    for (int n : ns) {
      GenParams params;
      params.seed = 97 + static_cast<std::uint64_t>(k) * 131 + static_cast<std::uint64_t>(n);
      params.num_items = k;
      params.num_bidders = n;
      params.num_mediators = std::max(1, n / 2);
      params.mix = "mixed";
      const Instance instance = generate_instance(params);

      const auto t0 = std::chrono::steady_clock::now();
      const SolveResult direct = solve_three_party(instance, CentralPriceMode::kMinimum, threads);
      const long direct_ms = elapsed_ms(t0);

      const auto t1 = std::chrono::steady_clock::now();
      const Instance wrapped = build_mediator_hierarchy(instance, 2, 2);
      const SolveResult viaHierarchy =
          solve_three_party(wrapped, CentralPriceMode::kMinimum, threads);
      const long hierarchy_ms = elapsed_ms(t1);

      const auto t2 = std::chrono::steady_clock::now();
      const WelfareSolution smallk = smallk_max_welfare(instance.universe(),
                                                        instance.all_valuations());
      const long smallk_ms = elapsed_ms(t2);

      // the routes must agree exactly on bidder-level welfare
      auto bidder_welfare = [&](const EquilibriumCertificate& cert) {
        Rational total;
        for (const Bidder& b : instance.bidders()) {
          total += b.valuation.value(cert.bidder_allocation.set_of(b.id));
        }
        return total;
      };
      const Rational brute = brute_welfare(instance.universe(), instance.all_valuations());
      const bool agree = bidder_welfare(direct.certificate) == brute &&
                         bidder_welfare(viaHierarchy.certificate) == brute &&
                         smallk.welfare == brute;
      std::printf("%3d  %3d  %9ld  %12ld  %9ld  %s\n", k, n, direct_ms, hierarchy_ms, smallk_ms,
                  agree ? "exact" : "MISMATCH");
      if (!agree) return kExitOracleDisagreement;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact three-party competitive equilibrium engine"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random gross-substitutes instance");
  adex::GenParams gen_params;
  std::string gen_out;
  gen->add_option("--seed", gen_params.seed, "rng seed")->default_val(1);
  gen->add_option("--items,-k", gen_params.num_items, "number of items (1..8)")->default_val(2);
  gen->add_option("--bidders,-n", gen_params.num_bidders, "number of bidders")->default_val(2);
  gen->add_option("--mediators,-m", gen_params.num_mediators, "number of mediators")
      ->default_val(1);
  gen->add_option("--mix", gen_params.mix, "valuation mix: ud|additive|or|mixed")
      ->default_val("ud");
  gen->add_option("--output,-o", gen_out, "output path (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance and print the certificate");
  SolveOptions solve_opt;
  solve->add_option("instance", solve_opt.instance_path, "instance file")->required();
  solve->add_flag("--trivial", solve_opt.trivial,
                  "build the trivial certificate from a bidder-level equilibrium");
  solve->add_option("--hierarchy", solve_opt.hierarchy_depth,
                    "wrap mediators into a hierarchy of this depth before solving")
      ->default_val(1);
  solve->add_option("--fanout", solve_opt.fanout, "hierarchy fanout")->default_val(2);
  solve->add_option("--central-prices", solve_opt.central_prices,
                    "min (default) or max Walrasian central prices")
      ->default_val("min")
      ->check(CLI::IsMember({"min", "max"}));
  solve->add_option("--threads", solve_opt.threads, "worker threads for independent sweeps")
      ->default_val(1);
  solve->add_flag("--timings", solve_opt.timings, "include wall-clock timings in the output");
  solve->add_flag("--skip-oracle-check", solve_opt.skip_oracle_check,
                  "skip the LP oracle cross-check of the solver prices");
  solve->add_option("--output,-o", solve_opt.out_path, "output path (default stdout)");

  // check
  auto* check = app.add_subcommand("check", "re-check a certificate against an instance");
  std::string check_instance, check_cert;
  int check_threads = 1;
  check->add_option("instance", check_instance, "instance file")->required();
  check->add_option("certificate", check_cert, "certificate file")->required();
  check->add_option("--threads", check_threads, "worker threads")->default_val(1);

  // bench
  auto* bench = app.add_subcommand("bench", "timing table: direct vs hierarchy vs smallk");
  std::string bench_items = "2,3";
  std::string bench_bidders = "4,8";
  int bench_threads = 1;
  bench->add_option("--items", bench_items, "comma-separated item counts")->default_val("2,3");
  bench->add_option("--bidders", bench_bidders, "comma-separated bidder counts")
      ->default_val("4,8");
  bench->add_option("--threads", bench_threads, "worker threads")->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      const adex::Instance instance = adex::generate_instance(gen_params);
      write_output(adex::io::print_instance(instance), gen_out);
      return kExitOk;
    }
    if (solve->parsed()) return run_solve(solve_opt);
    if (check->parsed()) return run_check(check_instance, check_cert, check_threads);
    if (bench->parsed()) return run_bench(bench_items, bench_bidders, bench_threads);
  } catch (const adex::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const adex::SizeGuardError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const adex::NoWalrasianEquilibrium& err) {
    std::cerr << "no equilibrium: " << err.what() << "\n";
    return kExitNoEquilibrium;
  } catch (const adex::NoWerpEquilibrium& err) {
    std::cerr << "no equilibrium: " << err.what() << "\n";
    return kExitNoEquilibrium;
  } catch (const adex::NoEquilibrium& err) {
    std::cerr << "no equilibrium: " << err.what() << "\n";
    return kExitNoEquilibrium;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
