#include "seccache/verifier.h"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "seccache/errors.h"
#include "seccache/rowspace.h"

namespace seccache {

namespace {

FieldMatrix observation(const LinearScheme& s, const DemandVector& d, std::size_t user) {
  if (user >= static_cast<std::size_t>(s.users())) {
    throw std::out_of_range("user index " + std::to_string(user) + " out of range");
  }
  return stack(s.cache(user), s.delivery(d));
}

CorrectnessCheck correctness_of(const LinearScheme& s, const FieldMatrix& g, int file) {
  CorrectnessCheck c;
  c.rank_full = rank(g);
  c.rank_masked_requested = rank(zero_columns(g, s.layout().file_columns(file)));
  c.file_units = static_cast<std::size_t>(s.units_per_file());
  c.pass = c.rank_full == c.rank_masked_requested + c.file_units;
  return c;
}

}  // namespace

CorrectnessCheck check_correctness(const LinearScheme& s, const DemandVector& d,
                                   std::size_t user) {
  return correctness_of(s, observation(s, d, user), d[user]);
}

SecurityCheck check_security_of(const LinearScheme& s, const FieldMatrix& observed,
                                int file) {
  SecurityCheck c;
  c.rank_full = rank(observed);
  c.rank_masked_others = rank(zero_columns(observed, s.layout().other_file_columns(file)));
  c.pass = c.rank_full == c.rank_masked_others;
  return c;
}

SecurityCheck check_security(const LinearScheme& s, const DemandVector& d,
                             std::size_t user) {
  return check_security_of(s, observation(s, d, user), d[user]);
}

std::vector<std::uint64_t> select_demands(int files, int users, const DemandPolicy& policy,
                                          std::uint64_t cap) {
  const auto total = demand_count(files, users);
  std::vector<std::uint64_t> out;
  if (policy.kind == DemandPolicy::Kind::all || policy.count >= total) {
    if (total > cap) {
      throw CapExceeded("demand space too large; use sampled verification", total, cap);
    }
    out.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) out[i] = i;
    return out;
  }
  std::set<std::uint64_t> chosen;
  for (int f = 1; f <= files && chosen.size() < policy.count; ++f) {
    chosen.insert(demand_index(files, DemandVector(std::vector<int>(users, f))));
  }
  std::mt19937_64 rng(policy.seed);
  while (chosen.size() < policy.count) chosen.insert(rng() % total);
  return {chosen.begin(), chosen.end()};
}

std::vector<const PairResult*> VerificationReport::failures() const {
  std::vector<const PairResult*> out;
  for (const auto& p : pairs)
    if (!p.correctness.pass || !p.security.pass) out.push_back(&p);
  return out;
}

unsigned worker_count() {
  if (const char* env = std::getenv("SECCACHE_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

VerificationReport verify_all(const LinearScheme& s, const DemandPolicy& policy,
                              std::uint64_t cap) {
  const auto indices = select_demands(s.files(), s.users(), policy, cap);
  const auto K = static_cast<std::size_t>(s.users());

  VerificationReport report;
  report.label = s.label();
  report.policy = policy;
  report.demands_checked = indices.size();
  report.pairs.resize(indices.size() * K);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto d = demand_at(s.files(), s.users(), indices[i]);
      const FieldMatrix x = s.delivery(d);
      for (std::size_t k = 0; k < K; ++k) {
        const FieldMatrix g = stack(s.cache(k), x);
        auto& slot = report.pairs[i * K + k];
        slot.demand = d;
        slot.user = k;
        slot.correctness = correctness_of(s, g, d[k]);
        slot.security = check_security_of(s, g, d[k]);
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, indices.size() / 8));
  if (workers <= 1) {
    work(0, indices.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (indices.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(indices.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }
  report.pass = std::all_of(report.pairs.begin(), report.pairs.end(), [](const PairResult& p) {
    return p.correctness.pass && p.security.pass;
  });
  return report;
}

std::vector<Element> decode(const LinearScheme& s, const DemandVector& d, std::size_t user,
                            const std::vector<Element>& cache_symbols,
                            const std::vector<Element>& delivery_symbols) {
  const FieldMatrix g = observation(s, d, user);
  if (cache_symbols.size() + delivery_symbols.size() != g.rows()) {
    throw std::invalid_argument("decode: observed symbol count does not match the scheme");
  }
  std::vector<Element> observed = cache_symbols;
  observed.insert(observed.end(), delivery_symbols.begin(), delivery_symbols.end());

  const RowSpaceSolver solver(g);
  const auto& f = s.field();
  std::vector<Element> out;
  for (std::size_t col : s.layout().file_columns(d[user])) {
    std::vector<Element> target(s.layout().total(), 0);
    target[col] = 1;
    const auto c = solver.solve(target);
    if (!c) {
      throw NotDecodable("not decodable: user " + std::to_string(user + 1) + " cannot recover W_" +
                         std::to_string(d[user]) + " under demand " + d.to_string());
    }
    Element symbol = 0;
    for (std::size_t r = 0; r < c->size(); ++r) symbol = f.add(symbol, f.mul((*c)[r], observed[r]));
    out.push_back(symbol);
  }
  return out;
}

SimulationResult simulate(const LinearScheme& s, const DemandVector& d, std::uint64_t seed,
                          std::optional<std::size_t> corrupt_row) {
  const auto& f = s.field();
  SimulationResult result;
  std::mt19937_64 rng(seed);
  result.input.resize(s.layout().total());
  for (auto& v : result.input) v = static_cast<Element>(rng() % f.q());

  result.delivery = s.delivery(d).apply(result.input);
  if (corrupt_row) {
    if (*corrupt_row >= result.delivery.size()) {
      throw std::out_of_range("simulate: corrupt row outside the delivery");
    }
    auto& sym = result.delivery[*corrupt_row];
    sym = f.add(sym, 1);
  }
  result.pass = true;
  for (std::size_t k = 0; k < static_cast<std::size_t>(s.users()); ++k) {
    const auto cached = s.cache(k).apply(result.input);
    std::vector<Element> truth;
    for (std::size_t col : s.layout().file_columns(d[k])) truth.push_back(result.input[col]);
    auto decoded = decode(s, d, k, cached, result.delivery);
    const bool ok = decoded == truth;
    result.user_ok.push_back(ok);
    result.decoded.push_back(std::move(decoded));
    result.pass = result.pass && ok;
  }
  return result;
}

}  // namespace seccache
