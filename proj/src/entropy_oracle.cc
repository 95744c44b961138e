#include "seccache/entropy_oracle.h"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "seccache/combinatorics.h"
#include "seccache/constructions.h"
#include "seccache/errors.h"
#include "seccache/rowspace.h"
#include "seccache/verifier.h"

namespace seccache {

VariableRef VariableRef::of_file(int n) {
  VariableRef v;
  v.kind = Kind::file;
  v.file = n;
  return v;
}

VariableRef VariableRef::of_cache(std::size_t k) {
  VariableRef v;
  v.kind = Kind::cache;
  v.user = k;
  return v;
}

VariableRef VariableRef::of_delivery(DemandVector d) {
  VariableRef v;
  v.kind = Kind::delivery;
  v.demand = std::move(d);
  return v;
}

VariableRef VariableRef::of_shares(int n, std::vector<std::size_t> share_indices) {
  VariableRef v;
  v.kind = Kind::share_set;
  v.file = n;
  v.shares = std::move(share_indices);
  return v;
}

std::string VariableRef::name() const {
  switch (kind) {
    case Kind::file: return "W_" + std::to_string(file);
    case Kind::cache: return "Z_" + std::to_string(user + 1);
    case Kind::delivery: return "X" + demand.to_string();
    case Kind::share_set: {
      std::string s = "T_" + std::to_string(file) + "[";
      for (std::size_t i = 0; i < shares.size(); ++i) s += (i ? "," : "") + std::to_string(shares[i]);
      return s + "]";
    }
  }
  return "?";
}

FieldMatrix resolve(const LinearScheme& s, const VariableRef& v) {
  switch (v.kind) {
    case VariableRef::Kind::file:
      return selector_rows(s.field(), s.layout().total(), s.layout().file_columns(v.file));
    case VariableRef::Kind::cache:
      return s.cache(v.user);
    case VariableRef::Kind::delivery:
      return s.delivery(v.demand);
    case VariableRef::Kind::share_set:
      if (!s.shares()) throw std::invalid_argument(s.label() + " has no share rows");
      if (v.file < 1 || v.file > s.files()) throw std::out_of_range("share_set: file index");
      return s.shares()->per_file[static_cast<std::size_t>(v.file - 1)].select_rows(v.shares);
  }
  throw std::logic_error("resolve: unknown variable kind");
}

FieldMatrix resolve_all(const LinearScheme& s, std::span<const VariableRef> vars) {
  FieldMatrix out(s.field(), 0, s.layout().total());
  for (const auto& v : vars) out = stack(out, resolve(s, v));
  return out;
}

std::size_t rank_entropy(const LinearScheme& s, std::span<const VariableRef> vars) {
  return rank(resolve_all(s, vars));
}

std::uint64_t input_space_size(const LinearScheme& s) {
  std::uint64_t n = 1;
  const std::uint64_t q = s.field().q();
  for (std::size_t i = 0; i < s.layout().total(); ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / q) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= q;
  }
  return n;
}

namespace {

// Calls visit(y) with y = g x for every x in F_q^cols. Stepping x like an
// odometer changes each touched digit by +1 mod q, so y is updated by adding
// one column per touched digit.
template <typename Visit>
void for_each_image(const FieldMatrix& g, Visit&& visit) {
  const std::size_t n = g.cols();
  const std::size_t r = g.rows();
  const std::uint32_t q = g.q();
  const FieldMatrix cols = g.transpose();
  std::vector<Element> x(n, 0);
  std::vector<Element> y(r, 0);
  while (true) {
    visit(y);
    std::size_t j = 0;
    for (; j < n; ++j) {
      const auto col = cols.row(j);
      for (std::size_t i = 0; i < r; ++i) {
        y[i] += col[i];
        if (y[i] >= q) y[i] -= q;
      }
      if (++x[j] < q) break;
      x[j] = 0;
    }
    if (j == n) return;
  }
}

// q^rows when it fits below 2^63, else 0.
std::uint64_t code_space(std::uint32_t q, std::size_t rows) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < rows; ++i) {
    if (n > (std::uint64_t{1} << 62) / q) return 0;
    n *= q;
  }
  return n;
}

std::uint64_t encode(std::span<const Element> y, std::uint32_t q) {
  std::uint64_t c = 0;
  for (std::size_t i = y.size(); i-- > 0;) c = c * q + y[i];
  return c;
}

// Tallies sorted codes; returns the image size or throws on non-uniformity.
EntropyResult tally(std::vector<std::uint64_t>& codes, std::uint32_t q, const std::string& what) {
  std::sort(codes.begin(), codes.end());
  EntropyResult res;
  std::uint64_t run = 0;
  std::uint64_t expected = 0;
  bool uniform = true;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    ++run;
    if (i + 1 == codes.size() || codes[i + 1] != codes[i]) {
      if (expected == 0) expected = run;
      if (run != expected) uniform = false;
      ++res.image_size;
      run = 0;
    }
  }
  res.uniform = uniform;
  if (!uniform) throw std::logic_error("brute_entropy: non-uniform image for " + what);
  std::uint64_t p = 1;
  while (p < res.image_size) {
    p *= q;
    ++res.value;
  }
  if (p != res.image_size) {
    throw std::logic_error("brute_entropy: image size " + std::to_string(res.image_size) +
                           " is not a power of q for " + what);
  }
  return res;
}

std::string collection_name(std::span<const VariableRef> vars) {
  std::string s = "{";
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i].name();
  return s + "}";
}

void require_enumerable(const LinearScheme& s, std::uint64_t max_enum) {
  const auto n = input_space_size(s);
  if (n > max_enum) throw CapExceeded("input space too large to enumerate", n, max_enum);
}

}  // namespace

EntropyResult brute_entropy(const LinearScheme& s, std::span<const VariableRef> vars,
                            std::uint64_t max_enum) {
  require_enumerable(s, max_enum);
  const FieldMatrix g = resolve_all(s, vars);
  const std::uint32_t q = s.field().q();
  const std::string what = collection_name(vars);
  if (code_space(q, g.rows()) != 0) {
    std::vector<std::uint64_t> codes;
    codes.reserve(static_cast<std::size_t>(input_space_size(s)));
    for_each_image(g, [&](const std::vector<Element>& y) { codes.push_back(encode(y, q)); });
    return tally(codes, q, what);
  }
  // Wide outputs: count whole vectors.
  std::map<std::vector<Element>, std::uint64_t> counts;
  for_each_image(g, [&](const std::vector<Element>& y) { ++counts[y]; });
  std::vector<std::uint64_t> codes;
  std::uint64_t id = 0;
  for (const auto& [key, count] : counts) {
    codes.insert(codes.end(), count, id++);
  }
  return tally(codes, q, what);
}

std::vector<VariableRef> oracle_variables(const LinearScheme& s,
                                          const RankAgreementOptions& options) {
  std::vector<VariableRef> pool;
  for (int n = 1; n <= s.files(); ++n) pool.push_back(VariableRef::of_file(n));
  for (int k = 0; k < s.users(); ++k) pool.push_back(VariableRef::of_cache(static_cast<std::size_t>(k)));
  const auto total = demand_count(s.files(), s.users());
  const auto policy = total <= options.max_deliveries
                          ? DemandPolicy::all()
                          : DemandPolicy::sample(options.max_deliveries, 0);
  for (auto idx : select_demands(s.files(), s.users(), policy)) {
    pool.push_back(VariableRef::of_delivery(demand_at(s.files(), s.users(), idx)));
  }
  if (options.include_share_sets && s.shares() && s.params().t) {
    const int K = s.users();
    const int t = *s.params().t;
    const auto threshold = static_cast<std::size_t>(binomial(K - 1, t - 1));
    const auto count = s.shares()->labels.size();
    std::vector<std::size_t> few(threshold), all(count);
    for (std::size_t i = 0; i < threshold; ++i) few[i] = i;
    for (std::size_t i = 0; i < count; ++i) all[i] = i;
    for (int n = 1; n <= s.files(); ++n) {
      pool.push_back(VariableRef::of_shares(n, few));
      pool.push_back(VariableRef::of_shares(n, all));
    }
  }
  return pool;
}

RankAgreementReport check_rank_agreement(const LinearScheme& s,
                                         const RankAgreementOptions& options) {
  require_enumerable(s, options.max_enum);
  RankAgreementReport report;
  const auto pool = oracle_variables(s, options);
  report.variables = pool.size();
  const std::uint32_t q = s.field().q();
  const auto inputs = static_cast<std::size_t>(input_space_size(s));

  // Per-variable image codes over all inputs, computed once.
  std::vector<FieldMatrix> mats;
  std::vector<std::vector<std::uint64_t>> codes(pool.size());
  std::vector<std::uint64_t> radix(pool.size());
  for (std::size_t v = 0; v < pool.size(); ++v) {
    mats.push_back(resolve(s, pool[v]));
    radix[v] = code_space(q, mats[v].rows());
    if (radix[v] == 0) continue;
    codes[v].reserve(inputs);
    for_each_image(mats[v], [&](const std::vector<Element>& y) { codes[v].push_back(encode(y, q)); });
  }

  std::vector<std::uint64_t> joint(inputs);
  for (std::size_t size = 0; size <= options.subset_size_cap && size <= pool.size(); ++size) {
    for (const auto& subset : index_subsets(pool.size(), size)) {
      std::vector<VariableRef> vars;
      std::vector<FieldMatrix> parts;
      std::uint64_t combined = 1;
      bool fast = true;
      for (auto i : subset) {
        vars.push_back(pool[i]);
        parts.push_back(mats[i]);
        if (radix[i] == 0 || combined > (std::uint64_t{1} << 62) / radix[i]) {
          fast = false;
        } else {
          combined *= radix[i];
        }
      }
      const std::size_t by_rank =
          rank(stack(parts, s.field(), s.layout().total()));
      EntropyResult brute;
      if (fast) {
        std::fill(joint.begin(), joint.end(), 0);
        for (auto i : subset) {
          for (std::size_t x = 0; x < inputs; ++x) joint[x] = joint[x] * radix[i] + codes[i][x];
        }
        brute = tally(joint, q, collection_name(vars));
      } else {
        brute = brute_entropy(s, vars, options.max_enum);
      }
      ++report.collections_checked;
      if (brute.value != by_rank || !brute.uniform) {
        report.mismatches.push_back(collection_name(vars) + ": brute " +
                                    std::to_string(brute.value) + " rank " +
                                    std::to_string(by_rank));
      }
    }
  }
  report.pass = report.mismatches.empty();
  return report;
}

namespace {

class IdentityLog {
 public:
  void expect(bool ok, const std::string& what) {
    ++checked_;
    if (!ok) failures_.push_back(what);
  }
  LemmaReport finish() && {
    return {failures_.empty(), checked_, std::move(failures_)};
  }

 private:
  std::uint64_t checked_ = 0;
  std::vector<std::string> failures_;
};

std::string eq_text(const char* tag, const std::string& ctx, std::size_t lhs, std::size_t rhs) {
  return std::string(tag) + " " + ctx + ": " + std::to_string(lhs) + " != " + std::to_string(rhs);
}

// All deliveries whose demand has `file` at position `user`.
std::vector<VariableRef> deliveries_with(const LinearScheme& s, std::size_t user, int file) {
  std::vector<VariableRef> out;
  for (const auto& d : demands_iter(s.files(), s.users())) {
    if (d[user] == file) out.push_back(VariableRef::of_delivery(d));
  }
  return out;
}

}  // namespace

LemmaReport check_lemma1_lemma2(const LinearScheme& s) {
  if (memory_of(s) != Rational(1)) {
    throw std::invalid_argument("cache identity checks require M=1, " + s.label() + " has M=" +
                                to_string(memory_of(s)));
  }
  IdentityLog log;
  const auto K = static_cast<std::size_t>(s.users());
  for (const auto& d : demands_iter(s.files(), s.users())) {
    if (d.uniform()) continue;
    for (std::size_t su = 0; su < K; ++su) {
      std::vector<VariableRef> lhs{VariableRef::of_file(d[su]), VariableRef::of_delivery(d)};
      std::vector<VariableRef> rhs = lhs;
      for (std::size_t k = 0; k < K; ++k)
        if (d[k] == d[su]) rhs.push_back(VariableRef::of_cache(k));
      const auto a = rank_entropy(s, lhs);
      const auto b = rank_entropy(s, rhs);
      log.expect(a == b, eq_text("cache determinism", d.to_string() + " user " +
                                                          std::to_string(su + 1), a, b));
    }
  }
  for (int n = 1; n <= s.files(); ++n) {
    std::vector<VariableRef> joint{VariableRef::of_file(n)};
    std::size_t sum = rank_entropy(s, joint);
    for (std::size_t k = 0; k < K; ++k) {
      joint.push_back(VariableRef::of_cache(k));
      const VariableRef z = VariableRef::of_cache(k);
      sum += rank_entropy(s, std::span(&z, 1));
    }
    const auto a = rank_entropy(s, joint);
    log.expect(a == sum, eq_text("file/cache independence", "W_" + std::to_string(n), a, sum));
  }
  return std::move(log).finish();
}

LemmaReport check_lemma3_lemma4(const LinearScheme& s, std::size_t sampled_choices,
                                std::uint64_t seed) {
  if (worst_case_rate(s) != Rational(1)) {
    throw std::invalid_argument("delivery identity checks require R=1, " + s.label() + " has R=" +
                                to_string(worst_case_rate(s)));
  }
  IdentityLog log;
  const int N = s.files();
  const auto K = static_cast<std::size_t>(s.users());
  std::mt19937_64 rng(seed);

  for (std::size_t t = 0; t < K; ++t) {
    std::vector<std::vector<VariableRef>> classes(static_cast<std::size_t>(N) + 1);
    for (int a = 1; a <= N; ++a) classes[static_cast<std::size_t>(a)] = deliveries_with(s, t, a);

    // Representative choice sets: the lexicographically least member first,
    // then random members.
    std::vector<std::vector<VariableRef>> choices;
    {
      std::vector<VariableRef> least(static_cast<std::size_t>(N) + 1);
      for (int a = 1; a <= N; ++a) least[static_cast<std::size_t>(a)] = classes[static_cast<std::size_t>(a)].front();
      choices.push_back(std::move(least));
    }
    for (std::size_t c = 0; c < sampled_choices; ++c) {
      std::vector<VariableRef> pick(static_cast<std::size_t>(N) + 1);
      for (int a = 1; a <= N; ++a) {
        const auto& cls = classes[static_cast<std::size_t>(a)];
        pick[static_cast<std::size_t>(a)] = cls[rng() % cls.size()];
      }
      choices.push_back(std::move(pick));
    }

    for (int a = 1; a <= N; ++a) {
      const auto& xa = classes[static_cast<std::size_t>(a)];
      const std::string ctx = "user " + std::to_string(t + 1) + " file " + std::to_string(a);
      std::vector<VariableRef> base{VariableRef::of_file(a), VariableRef::of_cache(t)};
      std::vector<VariableRef> with = base;
      with.insert(with.end(), xa.begin(), xa.end());
      const auto h_base = rank_entropy(s, base);
      const auto h_with = rank_entropy(s, with);
      log.expect(h_base == h_with, eq_text("delivery determinism", ctx, h_base, h_with));

      const auto h_xa = rank_entropy(s, xa);
      for (const auto& pick : choices) {
        // H(X_(t,a), X~_(t,s), s != a) = H(X_(t,a)) + sum H(X~_(t,s))
        std::vector<VariableRef> joint = xa;
        std::size_t sum = h_xa;
        for (int o = 1; o <= N; ++o) {
          if (o == a) continue;
          const auto& rep = pick[static_cast<std::size_t>(o)];
          joint.push_back(rep);
          sum += rank_entropy(s, std::span(&rep, 1));
        }
        const auto h = rank_entropy(s, joint);
        log.expect(h == sum, eq_text("delivery independence", ctx, h, sum));

        // H(W_b, X_(t,a), X~_(t,s), s not in {a,b}) = H(W_b) + H(X_(t,a)) + sum H(X~_(t,s))
        for (int b = 1; b <= N; ++b) {
          if (b == a) continue;
          const auto wb = VariableRef::of_file(b);
          std::vector<VariableRef> jb{wb};
          jb.insert(jb.end(), xa.begin(), xa.end());
          std::size_t sb = rank_entropy(s, std::span(&wb, 1)) + h_xa;
          for (int o = 1; o <= N; ++o) {
            if (o == a || o == b) continue;
            const auto& rep = pick[static_cast<std::size_t>(o)];
            jb.push_back(rep);
            sb += rank_entropy(s, std::span(&rep, 1));
          }
          const auto hb = rank_entropy(s, jb);
          log.expect(hb == sb, eq_text("file/delivery independence",
                                       ctx + " W_" + std::to_string(b), hb, sb));
        }
      }
    }
  }
  return std::move(log).finish();
}

SharingReport check_secret_sharing(int K, int t, std::uint64_t samples, std::uint64_t seed) {
  const ShareSystem shares = build_shares(K, t);
  SharingReport report;
  report.threshold = shares.threshold;
  report.share_count = shares.share_count;
  const auto n = static_cast<std::size_t>(shares.share_count);
  const auto m = static_cast<std::size_t>(shares.threshold);
  std::vector<std::size_t> file_cols(static_cast<std::size_t>(shares.units_per_file));
  for (std::size_t j = 0; j < file_cols.size(); ++j) file_cols[j] = j;

  auto leaks = [&](const std::vector<std::size_t>& subset) {
    const FieldMatrix g = shares.generator.select_rows(subset);
    return rank(g) != rank(zero_columns(g, file_cols));
  };

  report.exhaustive = shares.share_count <= 30;
  if (report.exhaustive) {
    for (const auto& subset : index_subsets(n, m)) {
      ++report.subsets_checked;
      if (leaks(subset)) ++report.leaking_subsets;
    }
  } else {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::uint64_t c = 0; c < samples; ++c) {
      // Partial Fisher-Yates for the first m positions.
      for (std::size_t i = 0; i < m; ++i) std::swap(idx[i], idx[i + rng() % (n - i)]);
      std::vector<std::size_t> subset(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m));
      std::sort(subset.begin(), subset.end());
      ++report.subsets_checked;
      if (leaks(subset)) ++report.leaking_subsets;
    }
  }

  const RowSpaceSolver all(shares.generator);
  report.reconstructs = true;
  for (std::size_t j : file_cols) {
    std::vector<Element> unit(shares.generator.cols(), 0);
    unit[j] = 1;
    if (!all.solve(unit)) report.reconstructs = false;
  }
  report.pass = report.leaking_subsets == 0 && report.reconstructs;
  return report;
}

}  // namespace seccache
