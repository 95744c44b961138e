// seccache: build, verify, simulate and analyze secure caching schemes.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seccache/constructions.h"
#include "seccache/entropy_oracle.h"
#include "seccache/errors.h"
#include "seccache/scheme_io.h"
#include "seccache/tradeoff.h"
#include "seccache/verifier.h"

namespace fs = std::filesystem;
using namespace seccache;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct ConstructArgs {
  std::string scheme;
  int N = 0;
  int K = 0;
  std::optional<int> t;
  std::string out;
};

struct VerifyArgs {
  std::string scheme;
  std::string demands = "all";
  std::uint64_t count = 100;
  std::uint64_t seed = 0;
  std::string report;
};

struct OracleArgs {
  std::string scheme;
  std::vector<std::string> checks{"entropy", "lemmas", "sharing"};
  std::uint64_t max_enum = kDefaultEnumerationCap;
  std::size_t subset_cap = 4;
};

struct SimulateArgs {
  std::string scheme;
  std::vector<int> demand;
  std::uint64_t seed = 0;
  std::optional<std::size_t> corrupt;
};

struct TradeoffArgs {
  int N = 0;
  int K = 0;
  int grid = 101;
  bool include_prior = false;
  std::string out;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DocumentError("cannot write " + path.string());
  out << text;
}

std::string summary(const LinearScheme& s) {
  return "M=" + to_string(memory_of(s)) + " R=" + to_string(worst_case_rate(s)) +
         " L=" + to_string(randomness_of(s)) + " q=" + std::to_string(s.field().q()) +
         " B=" + std::to_string(s.units_per_file());
}

int cmd_construct(const ConstructArgs& a) {
  const auto kind = parse_scheme_kind(a.scheme);
  if (!kind || *kind == SchemeKind::custom) {
    std::cerr << "error: unknown scheme '" << a.scheme << "'\n";
    return kUsage;
  }
  const LinearScheme s = build_scheme({*kind, a.N, a.K, a.t});
  save_scheme(s, a.out);
  std::cout << s.label() << ": " << summary(s) << '\n';
  return kPass;
}

int cmd_verify(const VerifyArgs& a) {
  const LinearScheme s = load_scheme(a.scheme);
  DemandPolicy policy;
  if (a.demands == "sample") {
    policy = DemandPolicy::sample(a.count, a.seed);
  } else if (a.demands != "all") {
    std::cerr << "error: --demands must be 'all' or 'sample'\n";
    return kUsage;
  }
  const auto report = verify_all(s, policy);
  if (!a.report.empty()) write_text(a.report, report_to_json(report).dump(2) + "\n");

  const auto failures = report.failures();
  std::cout << s.label() << ": " << report.demands_checked << " demands, "
            << report.pairs.size() << " (demand, user) pairs, " << failures.size() << " failed\n";
  for (const auto* p : failures) {
    std::cout << "  FAIL demand " << p->demand.to_string() << " user " << p->user + 1
              << (p->correctness.pass ? "" : " [not decodable]")
              << (p->security.pass ? "" : " [leaks other files]") << '\n';
  }
  return report.pass ? kPass : kFail;
}

int cmd_oracle(const OracleArgs& a) {
  const LinearScheme s = load_scheme(a.scheme);
  bool pass = true;
  for (const auto& check : a.checks) {
    if (check == "entropy") {
      RankAgreementOptions opt;
      opt.max_enum = a.max_enum;
      opt.subset_size_cap = a.subset_cap;
      const auto r = check_rank_agreement(s, opt);
      std::cout << "entropy: " << r.collections_checked << " collections over " << r.variables
                << " variables, " << r.mismatches.size() << " mismatches\n";
      for (const auto& m : r.mismatches) std::cout << "  " << m << '\n';
      pass = pass && r.pass;
    } else if (check == "lemmas") {
      bool ran = false;
      if (memory_of(s) == Rational(1)) {
        const auto r = check_lemma1_lemma2(s);
        std::cout << "lemmas (M=1): " << r.identities_checked << " identities, "
                  << r.failures.size() << " failed\n";
        for (const auto& f : r.failures) std::cout << "  " << f << '\n';
        pass = pass && r.pass;
        ran = true;
      }
      if (worst_case_rate(s) == Rational(1)) {
        const auto r = check_lemma3_lemma4(s);
        std::cout << "lemmas (R=1): " << r.identities_checked << " identities, "
                  << r.failures.size() << " failed\n";
        for (const auto& f : r.failures) std::cout << "  " << f << '\n';
        pass = pass && r.pass;
        ran = true;
      }
      if (!ran) std::cout << "lemmas: skipped (neither M=1 nor R=1)\n";
    } else if (check == "sharing") {
      if (!s.params().t) {
        std::cout << "sharing: skipped (scheme has no share system)\n";
        continue;
      }
      const auto r = check_secret_sharing(s.users(), *s.params().t);
      std::cout << "sharing: " << r.subsets_checked << (r.exhaustive ? " (all)" : " (sampled)")
                << " subsets of " << r.threshold << " out of " << r.share_count << " shares, "
                << r.leaking_subsets << " leaking; reconstruction "
                << (r.reconstructs ? "ok" : "FAILED") << '\n';
      pass = pass && r.pass;
    } else {
      std::cerr << "error: unknown check '" << check << "'\n";
      return kUsage;
    }
  }
  return pass ? kPass : kFail;
}

int cmd_simulate(const SimulateArgs& a) {
  const LinearScheme s = load_scheme(a.scheme);
  const DemandVector d(a.demand);
  if (d.users() != static_cast<std::size_t>(s.users())) {
    std::cerr << "error: demand needs " << s.users() << " entries\n";
    return kUsage;
  }
  for (int f : d.files()) {
    if (f < 1 || f > s.files()) {
      std::cerr << "error: demand entries must lie in [1," << s.files() << "]\n";
      return kUsage;
    }
  }
  if (a.corrupt && *a.corrupt >= s.delivery(d).rows()) {
    std::cerr << "error: --corrupt row outside the delivery\n";
    return kUsage;
  }
  const auto r = simulate(s, d, a.seed, a.corrupt);
  std::cout << s.label() << " demand " << d.to_string() << " seed " << a.seed << '\n';
  for (std::size_t k = 0; k < r.user_ok.size(); ++k) {
    std::cout << "  user " << k + 1 << " W_" << d[k] << ": " << (r.user_ok[k] ? "ok" : "MISMATCH")
              << '\n';
  }
  return r.pass ? kPass : kFail;
}

int cmd_tradeoff(const TradeoffArgs& a) {
  const auto data = emit_curves(a.N, a.K, a.grid);
  fs::path vertices = a.out;
  vertices.replace_extension(".vertices.json");
  write_text(a.out, curves_csv(data));
  write_text(vertices, curves_to_json(data, a.include_prior).dump(2) + "\n");

  auto print = [](const char* name, const std::vector<TradeoffPoint>& pts) {
    std::cout << name << ':';
    for (const auto& p : pts) std::cout << " (" << to_string(p.M) << ',' << to_string(p.R) << ')';
    std::cout << '\n';
  };
  print("achievable vertices", data.achievable.vertices());
  print("dominated", data.achievable.dominated());
  if (a.include_prior) print("prior vertices", data.prior.vertices());
  for (const auto& c : data.converse) std::cout << "converse: " << c.label << '\n';
  std::cout << "wrote " << a.out << " and " << vertices.string() << '\n';
  return kPass;
}

std::vector<int> parse_demand(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError("--demand", "bad entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct, verify and analyze secure coded caching schemes"};
  app.require_subcommand(1);

  ConstructArgs construct;
  auto* c = app.add_subcommand("construct", "Build a scheme and write its JSON document");
  c->add_option("--scheme", construct.scheme, "otp, theorem1, theorem2 or theorem3")->required();
  c->add_option("--N", construct.N, "Number of files")->required();
  c->add_option("--K", construct.K, "Number of users")->required();
  c->add_option("--t", construct.t, "Share parameter for theorem3");
  c->add_option("--out", construct.out, "Output path")->required();

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check correctness and security of a scheme");
  v->add_option("--scheme", verify.scheme, "Scheme JSON")->required();
  v->add_option("--demands", verify.demands, "all or sample");
  v->add_option("--count", verify.count, "Sampled demands");
  v->add_option("--seed", verify.seed, "Sampling seed");
  v->add_option("--report", verify.report, "Report JSON path");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Brute-force entropy and structural checks");
  o->add_option("--scheme", oracle.scheme, "Scheme JSON")->required();
  o->add_option("--checks", oracle.checks, "entropy,lemmas,sharing")->delimiter(',');
  o->add_option("--max-enum", oracle.max_enum, "Input enumeration cap");
  o->add_option("--subset-cap", oracle.subset_cap, "Largest variable collection");

  SimulateArgs sim;
  std::string demand_text;
  auto* s = app.add_subcommand("simulate", "Run placement, delivery and decoding on random data");
  s->add_option("--scheme", sim.scheme, "Scheme JSON")->required();
  s->add_option("--demand", demand_text, "d1,d2,...")->required();
  s->add_option("--seed", sim.seed, "Data seed");
  s->add_option("--corrupt", sim.corrupt, "Delivery row to corrupt");

  TradeoffArgs tradeoff;
  auto* t = app.add_subcommand("tradeoff", "Export memory-rate curves");
  t->add_option("--N", tradeoff.N, "Number of files")->required();
  t->add_option("--K", tradeoff.K, "Number of users")->required();
  t->add_option("--grid", tradeoff.grid, "Sample count");
  t->add_flag("--include-prior", tradeoff.include_prior, "Add prior-work vertices to the JSON");
  t->add_option("--out", tradeoff.out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (*c) return cmd_construct(construct);
    if (*v) return cmd_verify(verify);
    if (*o) return cmd_oracle(oracle);
    if (*s) {
      sim.demand = parse_demand(demand_text);
      return cmd_simulate(sim);
    }
    if (*t) return cmd_tradeoff(tradeoff);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotDecodable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
