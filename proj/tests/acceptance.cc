// Acceptance checks. One line per criterion:
//
//   criterion <n> PASS|FAIL  <summary>  (<elapsed> ms, budget <b> ms)
//
// Usage: acceptance [n ...]   (no arguments runs all criteria)
// Exit status is 0 iff every selected criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seccache/combinatorics.h"
#include "seccache/constructions.h"
#include "seccache/entropy_oracle.h"
#include "seccache/tradeoff.h"
#include "seccache/verifier.h"

using namespace seccache;

namespace {

// Wall-clock budgets per criterion, in milliseconds.
const std::map<int, double> kBudgetMs = {{1, 10'000}, {2, 10'000}, {3, 60'000}, {4, 10'000},
                                         {5, 120'000}, {6, 1'000}, {7, 5'000}, {8, 10'000}};

class Outcome {
 public:
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  bool pass() const { return failures_.empty(); }
  std::size_t checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }
  std::string note;

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

std::string pt(const Rational& M, const Rational& R) {
  return "(" + to_string(M) + "," + to_string(R) + ")";
}

using Points = std::vector<std::pair<Rational, Rational>>;

Points coords(const std::vector<TradeoffPoint>& pts) {
  Points out;
  for (const auto& p : pts) out.emplace_back(p.M, p.R);
  return out;
}

std::string describe(const Points& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? "," : "") + pt(pts[i].first, pts[i].second);
  return s + "}";
}

Rational Q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

void verify_exhaustive(Outcome& out, const LinearScheme& s) {
  const auto r = verify_all(s, DemandPolicy::all());
  out.require(r.pass, s.label() + ": " + std::to_string(r.failures().size()) + " failing pairs");
  out.require(r.demands_checked == demand_count(s.files(), s.users()),
              s.label() + ": not every demand was checked");
}

// 1. theorem1 scheme for K = 2..8.
Outcome criterion1() {
  Outcome out;
  for (int K = 2; K <= 8; ++K) {
    const auto s = build_theorem1(K);
    verify_exhaustive(out, s);
    out.require(memory_of(s) == Q(1), s.label() + ": M=" + to_string(memory_of(s)));
    out.require(worst_case_rate(s) == Q(K - 1), s.label() + ": R=" + to_string(worst_case_rate(s)));
  }
  out.note = "K=2..8, all 2^K demands";
  return out;
}

// 2. theorem2 scheme for (N,K) in [2..4]^2, plus the (3,3) layout.
Outcome criterion2() {
  Outcome out;
  for (int N = 2; N <= 4; ++N) {
    for (int K = 2; K <= 4; ++K) {
      const auto s = build_theorem2(N, K);
      verify_exhaustive(out, s);
      out.require(memory_of(s) == Q((N - 1) * (K - 1)), s.label() + ": M=" + to_string(memory_of(s)));
      out.require(worst_case_rate(s) == Q(1), s.label() + ": R=" + to_string(worst_case_rate(s)));
    }
  }
  // Columns W_1 W_2 W_3 S_{1,1} S_{1,2} S_{2,1} S_{2,2}.
  const auto s = build_theorem2(3, 3);
  const PrimeField f(2);
  const std::vector<FieldMatrix> expected{
      FieldMatrix::from_rows(f, 7, {{1, 1, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0},
                                    {1, 0, 1, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 1}}),
      FieldMatrix::from_rows(f, 7, {{0, 0, 0, 1, 0, 0, 0}, {1, 1, 0, 0, 1, 0, 0},
                                    {0, 0, 0, 0, 0, 1, 0}, {1, 0, 1, 0, 0, 0, 1}}),
      FieldMatrix::from_rows(f, 7, {{0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0},
                                    {0, 0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 1}})};
  out.require(s.caches() == expected, "theorem2(N=3,K=3) cache layout differs from the example");
  out.require(memory_of(s) == Q(4), "theorem2(N=3,K=3): M != 4");
  out.note = "(N,K) in [2..4]^2, all N^K demands; (3,3) layout";
  return out;
}

// 3. theorem3 scheme for N in [2..4], K in [3..5], t in [1, K-2].
Outcome criterion3() {
  Outcome out;
  int instances = 0;
  int l_mismatch = 0;
  std::string l_example;
  for (int N = 2; N <= 4; ++N) {
    for (int K = 3; K <= 5; ++K) {
      for (int t = 1; t <= K - 2; ++t) {
        const auto s = build_theorem3(N, K, t);
        ++instances;
        verify_exhaustive(out, s);
        const auto B = binomial(K, t) - binomial(K - 1, t - 1);
        const Rational M = Rational(N * t, K - t) + Q(1) - Rational(1, B);
        const Rational R(K, t + 1);
        const Rational L(binomial(K - 1, t - 1) + binomial(K, t + 1), B);
        out.require(memory_of(s) == M, s.label() + ": M=" + to_string(memory_of(s)) +
                                           ", formula " + to_string(M));
        out.require(worst_case_rate(s) == R, s.label() + ": R=" + to_string(worst_case_rate(s)) +
                                                 ", formula " + to_string(R));
        const auto L_built = randomness_of(s);
        out.require(L_built == L, s.label() + ": L=" + to_string(L_built) + " (" +
                                     std::to_string(s.layout().key_count()) +
                                     " key units), formula " + to_string(L));
        if (L_built != L) {
          ++l_mismatch;
          if (l_example.empty()) l_example = s.label();
        }
      }
    }
  }
  const auto s = build_theorem3(3, 3, 1);
  out.require(memory_of(s) == Q(2), "theorem3(3,3,1): M != 2");
  out.require(worst_case_rate(s) == Q(3, 2), "theorem3(3,3,1): R != 3/2");
  out.require(randomness_of(s) == Q(2),
              "theorem3(3,3,1): L=" + to_string(randomness_of(s)) + ", expected 2");
  out.note = std::to_string(instances) + " instances, all N^K demands; L differs from formula in " +
             std::to_string(l_mismatch) + " of them";
  return out;
}

// 4. Non-standard secret sharing, exhaustive over threshold-size subsets.
Outcome criterion4() {
  Outcome out;
  std::uint64_t subsets = 0;
  for (auto [K, t] : {std::pair{3, 1}, {4, 1}, {4, 2}, {5, 2}, {5, 3}}) {
    const auto r = check_secret_sharing(K, t);
    const std::string tag = "(K,t)=(" + std::to_string(K) + "," + std::to_string(t) + ")";
    out.require(r.exhaustive, tag + ": not exhaustive");
    out.require(r.leaking_subsets == 0, tag + ": " + std::to_string(r.leaking_subsets) + " leaking subsets");
    out.require(r.reconstructs, tag + ": shares do not reconstruct");
    out.require(r.subsets_checked ==
                    static_cast<std::uint64_t>(binomial(r.share_count, r.threshold)),
                tag + ": subset count");
    subsets += r.subsets_checked;
  }
  out.note = std::to_string(subsets) + " subsets";
  return out;
}

// 5. Brute-force entropy equals rank; structural identities.
Outcome criterion5() {
  Outcome out;
  std::uint64_t collections = 0;
  std::uint64_t identities = 0;
  const std::vector<LinearScheme> schemes{build_theorem1(3), build_theorem2(2, 3),
                                          build_theorem2(3, 3), build_theorem3(2, 3, 1)};
  for (const auto& s : schemes) {
    RankAgreementOptions opt;
    opt.subset_size_cap = 4;
    const auto r = check_rank_agreement(s, opt);
    out.require(r.pass, s.label() + ": " + std::to_string(r.mismatches.size()) + " mismatches" +
                            (r.mismatches.empty() ? "" : ", first " + r.mismatches.front()));
    collections += r.collections_checked;
    if (memory_of(s) == Q(1)) {
      const auto l = check_lemma1_lemma2(s);
      out.require(l.pass, s.label() + ": M=1 identities failed");
      identities += l.identities_checked;
    }
    if (worst_case_rate(s) == Q(1)) {
      const auto l = check_lemma3_lemma4(s);
      out.require(l.pass, s.label() + ": R=1 identities failed");
      identities += l.identities_checked;
    }
  }
  out.require(identities > 0, "no identities were checked");
  out.note = std::to_string(collections) + " collections, " + std::to_string(identities) +
             " identities";
  return out;
}

#ifdef SECCACHE_CLI_PATH
// Runs `seccache tradeoff` and returns its vertex document.
nlohmann::json cli_vertices(int N, int K, Outcome& out) {
  const auto dir = std::filesystem::temp_directory_path() / "seccache_acceptance";
  std::filesystem::create_directories(dir);
  const auto csv = dir / ("fig_" + std::to_string(N) + "_" + std::to_string(K) + ".csv");
  const std::string cmd = std::string(SECCACHE_CLI_PATH) + " tradeoff --N " + std::to_string(N) +
                          " --K " + std::to_string(K) + " --include-prior --out " + csv.string() +
                          " > /dev/null";
  const int status = std::system(cmd.c_str());
  out.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "tradeoff command failed");
  auto json_path = csv;
  json_path.replace_extension(".vertices.json");
  std::ifstream in(json_path);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  std::filesystem::remove_all(dir);
  return doc;
}

Points json_points(const nlohmann::json& list) {
  Points out;
  if (!list.is_array()) return out;
  for (const auto& p : list) {
    out.emplace_back(Rational(p["M"][0].get<std::int64_t>(), p["M"][1].get<std::int64_t>()),
                     Rational(p["R"][0].get<std::int64_t>(), p["R"][1].get<std::int64_t>()));
  }
  return out;
}
#endif

void check_points(Outcome& out, const std::string& what, const Points& got, const Points& want) {
  out.require(got == want, what + " = " + describe(got) + ", expected " + describe(want));
}

const ConverseConstraint* find_kind(const std::vector<ConverseConstraint>& cs,
                                    ConverseConstraint::Kind kind) {
  for (const auto& c : cs)
    if (c.kind == kind) return &c;
  return nullptr;
}

// 6. Memory-rate figure data.
Outcome criterion6() {
  Outcome out;
  using Kind = ConverseConstraint::Kind;
  {
    const auto d = emit_curves(2, 4, 101);
    check_points(out, "N=2,K=4 vertices", coords(d.achievable.vertices()),
                 {{Q(1), Q(3)}, {Q(4, 3), Q(2)}, {Q(3), Q(1)}});
    check_points(out, "N=2,K=4 dominated", coords(d.achievable.dominated()), {{Q(8, 3), Q(4, 3)}});
    check_points(out, "N=2,K=4 prior", coords(d.prior.vertices()),
                 {{Q(1), Q(4)}, {Q(5, 3), Q(2)}, {Q(3), Q(4, 3)}, {Q(6), Q(1)}});
    out.require(rate_lower_bound(d.converse, Q(1)) == Q(3), "N=2,K=4 converse at M=1");
    const auto* lin = find_kind(d.converse, Kind::linear);
    out.require(lin && lin->alpha == Q(3) && lin->beta == Q(1) && lin->gamma == Q(6) &&
                    lin->m_lo == Q(1) && lin->m_hi == Q(4, 3),
                "N=2,K=4 segment 3M+R>=6 on [1,4/3]");
    const auto* floor = find_kind(d.converse, Kind::cache_floor_at_unit_rate);
    out.require(floor && floor->gamma == Q(3), "N=2,K=4 cache floor 3 at R=1");
  }
  {
    const auto d = emit_curves(4, 3, 101);
    check_points(out, "N=4,K=3 points", coords(achievable_points(4, 3)),
                 {{Q(1), Q(3)}, {Q(5, 2), Q(3, 2)}, {Q(6), Q(1)}});
    check_points(out, "N=4,K=3 vertices", coords(d.achievable.vertices()),
                 {{Q(1), Q(3)}, {Q(5, 2), Q(3, 2)}, {Q(6), Q(1)}});
    check_points(out, "N=4,K=3 prior", coords(d.prior.vertices()),
                 {{Q(1), Q(3)}, {Q(3), Q(3, 2)}, {Q(8), Q(1)}});
    out.require(rate_lower_bound(d.converse, Q(1)) == Q(3), "N=4,K=3 converse R>=3 at M=1");
    const auto* floor = find_kind(d.converse, Kind::cache_floor_at_unit_rate);
    out.require(floor && floor->gamma == Q(6), "N=4,K=3 cache floor 6 at R=1");
  }
#ifdef SECCACHE_CLI_PATH
  {
    const auto doc = cli_vertices(2, 4, out);
    check_points(out, "cli N=2,K=4 vertices", json_points(doc["achievable"]["vertices"]),
                 {{Q(1), Q(3)}, {Q(4, 3), Q(2)}, {Q(3), Q(1)}});
    check_points(out, "cli N=2,K=4 dominated", json_points(doc["achievable"]["dominated"]),
                 {{Q(8, 3), Q(4, 3)}});
    check_points(out, "cli N=2,K=4 prior", json_points(doc["prior"]["vertices"]),
                 {{Q(1), Q(4)}, {Q(5, 3), Q(2)}, {Q(3), Q(4, 3)}, {Q(6), Q(1)}});
  }
  {
    const auto doc = cli_vertices(4, 3, out);
    check_points(out, "cli N=4,K=3 vertices", json_points(doc["achievable"]["vertices"]),
                 {{Q(1), Q(3)}, {Q(5, 2), Q(3, 2)}, {Q(6), Q(1)}});
    check_points(out, "cli N=4,K=3 prior", json_points(doc["prior"]["vertices"]),
                 {{Q(1), Q(3)}, {Q(3), Q(3, 2)}, {Q(8), Q(1)}});
  }
  out.note = "library and CLI vertex lists";
#else
  out.note = "library vertex lists";
#endif
  return out;
}

// 7. Endpoint optimality and the N=2 segment.
Outcome criterion7() {
  Outcome out;
  int samples = 0;
  for (int N = 2; N <= 6; ++N) {
    for (int K = 2; K <= 6; ++K) {
      const std::string tag = "N=" + std::to_string(N) + ",K=" + std::to_string(K);
      const auto e = lower_convex_envelope(achievable_points(N, K));
      const Rational r_at_1 = N == 2 ? Q(K - 1) : Q(K);
      out.require(e.eval(Q(1)) == r_at_1, tag + ": envelope(1)=" + to_string(e.eval(Q(1))));
      out.require(rate_lower_bound(converse_constraints(N, K), Q(1)) == r_at_1,
                  tag + ": converse at M=1");
      const Rational m_unit((N - 1) * (K - 1));
      out.require(e.first_min_rate_memory() == m_unit && e.eval(m_unit) == Q(1),
                  tag + ": R=1 first reached at M=" + to_string(e.first_min_rate_memory()));
      if (m_unit > Q(1)) {
        const Rational just_left = m_unit - Rational(1, 1000);
        out.require(e.eval(just_left) > Q(1), tag + ": R=1 reached before (N-1)(K-1)");
      }
      if (N == 2 && K >= 3) {
        const Rational alpha((K - 1) * (K - 2), 2);
        const Rational gamma(K * (K - 1), 2);
        const Rational width = Rational(K, K - 1) - Q(1);
        for (int i = 0; i < 20; ++i, ++samples) {
          const Rational M = Q(1) + width * Rational(i, 19);
          out.require(e.eval(M) == gamma - alpha * M,
                      tag + ": envelope off the segment at M=" + to_string(M));
        }
      }
    }
  }
  out.note = "25 (N,K) pairs, " + std::to_string(samples) + " segment samples";
  return out;
}

// 8. End-to-end simulation.
Outcome criterion8() {
  Outcome out;
  std::mt19937_64 rng(20240601);
  int draws = 0;
  std::map<std::string, int> per_kind;
  for (; draws < 100; ++draws) {
    LinearScheme s = [&]() {
      switch (draws % 4) {
        case 0: return build_otp(2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 3));
        case 1: return build_theorem1(2 + static_cast<int>(rng() % 5));
        case 2: return build_theorem2(2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 3));
        default: {
          const int K = 3 + static_cast<int>(rng() % 3);
          const int t = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(K - 2));
          return build_theorem3(2 + static_cast<int>(rng() % 3), K, t);
        }
      }
    }();
    const auto index = rng() % demand_count(s.files(), s.users());
    const auto d = demand_at(s.files(), s.users(), index);
    const auto seed = rng();
    const auto r = simulate(s, d, seed);
    out.require(r.pass, s.label() + " demand " + d.to_string() + " failed to decode");
    ++per_kind[std::string(to_string(s.params().kind))];
  }
  out.require(per_kind.size() == 4, "not all constructions were drawn");

  const auto s = build_theorem3(3, 3, 1);
  const auto bad = simulate(s, DemandVector({1, 2, 3}), 42, 0);
  out.require(!bad.pass, "a corrupted delivery still decoded correctly");
  out.note = std::to_string(draws) + " draws over 4 constructions; corruption detected";
  return out;
}

const std::map<int, std::function<Outcome()>> kCriteria = {
    {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
    {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};

bool run(int n) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = kCriteria.at(n)();
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const double budget = kBudgetMs.at(n);
  out.require(ms < budget, "over time budget");
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(1);
  line << "criterion " << n << ' ' << (out.pass() ? "PASS" : "FAIL") << "  " << out.note << "; "
       << out.checks() << " checks (" << ms << " ms, budget " << budget << " ms)";
  std::cout << line.str() << '\n';
  for (const auto& f : out.failures()) std::cout << "    " << f << '\n';
  return out.pass();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (!kCriteria.count(n)) {
      std::cerr << "unknown criterion '" << argv[i] << "'\n";
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (const auto& [n, fn] : kCriteria) selected.push_back(n);
  bool all = true;
  for (int n : selected) all = run(n) && all;
  return all ? 0 : 1;
}
