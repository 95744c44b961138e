#include "seccache/constructions.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "seccache/combinatorics.h"

namespace seccache {

namespace {

FieldMatrix direct_send(const PrimeField& field, const VariableLayout& layout, int file) {
  return selector_rows(field, layout.total(), layout.file_columns(file));
}

void require_uniform(const DemandVector& d) {
  if (!d.uniform()) throw std::invalid_argument("uniform_delivery: demand " + d.to_string() +
                                                " is not uniform");
}

std::string param_label(std::string_view kind, int N, int K) {
  return std::string(kind) + "(N=" + std::to_string(N) + ",K=" + std::to_string(K) + ")";
}

std::string subset_name(const std::vector<int>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

bool contains(const std::vector<int>& s, int v) {
  return std::find(s.begin(), s.end(), v) != s.end();
}

std::vector<int> without(const std::vector<int>& s, int v) {
  std::vector<int> out;
  for (int x : s)
    if (x != v) out.push_back(x);
  return out;
}

// Accumulates a row over the global layout.
class RowBuilder {
 public:
  RowBuilder(const PrimeField& field, std::size_t total) : field_(field), row_(total, 0) {}
  RowBuilder& add(std::size_t col, Element coeff = 1) {
    row_.at(col) = field_.add(row_[col], coeff % field_.q());
    return *this;
  }
  RowBuilder& add_row(std::span<const Element> other, Element coeff = 1) {
    for (std::size_t c = 0; c < row_.size(); ++c)
      row_[c] = field_.add(row_[c], field_.mul(coeff, other[c]));
    return *this;
  }
  const std::vector<Element>& row() const { return row_; }

 private:
  const PrimeField& field_;
  std::vector<Element> row_;
};

}  // namespace

FieldMatrix uniform_delivery(const LinearScheme& s, const DemandVector& d) {
  require_uniform(d);
  return direct_send(s.field(), s.layout(), d[0]);
}

// One-time pad: Z_k = S_k, X = {W_{d_k} + S_k}.

LinearScheme build_otp(int N, int K) {
  if (N < 2 || K < 2) throw std::invalid_argument("otp requires N >= 2 and K >= 2");
  const PrimeField f(2);
  std::vector<std::string> keys;
  for (int k = 1; k <= K; ++k) keys.push_back("S_" + std::to_string(k));
  VariableLayout layout(N, 1, keys);

  std::vector<FieldMatrix> caches;
  for (int k = 0; k < K; ++k) {
    caches.push_back(selector_rows(f, layout.total(), {layout.key_column(k)}));
  }
  auto delivery = [f, layout](const DemandVector& d) {
    if (d.uniform()) return direct_send(f, layout, d[0]);
    FieldMatrix x(f, 0, layout.total());
    for (std::size_t k = 0; k < d.users(); ++k) {
      RowBuilder r(f, layout.total());
      r.add(layout.file_column(d[k], 0)).add(layout.key_column(k));
      x.append_row(r.row());
    }
    return x;
  };
  return LinearScheme({SchemeKind::otp, N, K, std::nullopt}, f, layout, std::move(caches),
                      delivery, param_label("otp", N, K));
}

// Two-file scheme with unit cache (M = 1).

CoefficientAssignment assign_coefficients(const DemandVector& d) {
  if (d.uniform()) {
    throw std::invalid_argument("assign_coefficients: demand " + d.to_string() +
                                " is uniform");
  }
  CoefficientAssignment out;
  out.a.assign(d.users(), 0);
  for (int file : {1, 2}) {
    std::vector<std::size_t> group;
    for (std::size_t k = 0; k < d.users(); ++k) {
      if (d[k] != 1 && d[k] != 2) {
        throw std::invalid_argument("assign_coefficients: N=2 demands only");
      }
      if (d[k] == file) group.push_back(k);
    }
    std::size_t i = 0;
    while (group.size() - i > 2) {
      out.a[group[i]] = 1;
      out.a[group[i + 1]] = 2;
      i += 2;
    }
    if (group.size() - i == 1) {
      out.a[group[i]] = 1;
    } else if (group.size() - i == 2) {
      out.a[group[i]] = 2;
      out.a[group[i + 1]] = 2;
    }
  }
  return out;
}

LinearScheme build_theorem1(int K) {
  if (K < 2) throw std::invalid_argument("theorem1 requires K >= 2");
  const PrimeField f(3);
  std::vector<std::string> keys;
  for (int k = 1; k < K; ++k) keys.push_back("S_" + std::to_string(k));
  VariableLayout layout(2, 1, keys);

  std::vector<FieldMatrix> caches;
  for (int k = 0; k + 1 < K; ++k) {
    caches.push_back(selector_rows(f, layout.total(), {layout.key_column(k)}));
  }
  RowBuilder last(f, layout.total());
  last.add(layout.file_column(1, 0), 2).add(layout.file_column(2, 0), 2);
  for (int k = 0; k + 1 < K; ++k) last.add(layout.key_column(k));
  caches.push_back(FieldMatrix::from_rows(f, layout.total(), {last.row()}));

  auto delivery = [f, layout](const DemandVector& d) {
    if (d.uniform()) return direct_send(f, layout, d[0]);
    const auto coeffs = assign_coefficients(d);
    FieldMatrix x(f, 0, layout.total());
    for (std::size_t k = 0; k + 1 < d.users(); ++k) {
      RowBuilder r(f, layout.total());
      r.add(layout.file_column(d[k], 0), coeffs.a[k]).add(layout.key_column(k), 2);
      x.append_row(r.row());
    }
    return x;
  };
  return LinearScheme({SchemeKind::theorem1, 2, K, std::nullopt}, f, layout,
                      std::move(caches), delivery, param_label("theorem1", 2, K));
}

// Unit-rate scheme (R = 1). Key S_{n,k} for n in [N-1], k in [K-1]; S_{0,k} = 0.

LinearScheme build_theorem2(int N, int K) {
  if (N < 2 || K < 2) throw std::invalid_argument("theorem2 requires N >= 2 and K >= 2");
  const PrimeField f(2);
  std::vector<std::string> keys;
  for (int n = 1; n < N; ++n)
    for (int k = 1; k < K; ++k)
      keys.push_back("S_{" + std::to_string(n) + "," + std::to_string(k) + "}");
  VariableLayout layout(N, 1, keys);
  auto key_col = [layout, K](int n, int k) {
    return layout.key_column(static_cast<std::size_t>((n - 1) * (K - 1) + (k - 1)));
  };

  std::vector<FieldMatrix> caches;
  for (int k = 1; k < K; ++k) {
    FieldMatrix z(f, 0, layout.total());
    for (int n = 2; n <= N; ++n) {
      for (int other = 1; other < K; ++other) {
        RowBuilder r(f, layout.total());
        if (other == k) {
          r.add(layout.file_column(1, 0)).add(layout.file_column(n, 0));
        }
        r.add(key_col(n - 1, other));
        z.append_row(r.row());
      }
    }
    caches.push_back(std::move(z));
  }
  FieldMatrix all_keys(f, 0, layout.total());
  for (std::size_t i = 0; i < layout.key_count(); ++i) {
    RowBuilder r(f, layout.total());
    r.add(layout.key_column(i));
    all_keys.append_row(r.row());
  }
  caches.push_back(std::move(all_keys));

  auto delivery = [f, layout, key_col](const DemandVector& d) {
    if (d.uniform()) return direct_send(f, layout, d[0]);
    const int last = d[d.users() - 1];
    RowBuilder r(f, layout.total());
    r.add(layout.file_column(last, 0));
    for (std::size_t i = 0; i + 1 < d.users(); ++i) {
      const int user = static_cast<int>(i) + 1;
      if (last > 1) r.add(key_col(last - 1, user));
      if (d[i] > 1) r.add(key_col(d[i] - 1, user));
    }
    return FieldMatrix::from_rows(f, layout.total(), {r.row()});
  };
  return LinearScheme({SchemeKind::theorem2, N, K, std::nullopt}, f, layout,
                      std::move(caches), delivery, param_label("theorem2", N, K));
}

// Threshold shares and the general share-based scheme.

std::size_t ShareSystem::label_index(const std::vector<int>& label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) {
    throw std::out_of_range("ShareSystem: unknown share label {" + subset_name(label) + "}");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

FieldMatrix ShareSystem::key_block() const {
  FieldMatrix out(field, generator.rows(), static_cast<std::size_t>(threshold));
  for (std::size_t r = 0; r < generator.rows(); ++r)
    for (int c = 0; c < threshold; ++c)
      out.set(r, c, generator.at(r, static_cast<std::size_t>(units_per_file + c)));
  return out;
}

std::uint32_t theorem3_field_size(int K, int t) {
  const auto shares = binomial(K, t);
  return smallest_prime_at_least(
      static_cast<std::uint32_t>(std::max<std::int64_t>(shares, t + 2)));
}

ShareSystem build_shares(int K, int t) {
  if (K < 3 || t < 1 || t > K - 2) {
    throw std::invalid_argument("build_shares: need K >= 3 and 1 <= t <= K-2, got K=" +
                                std::to_string(K) + " t=" + std::to_string(t));
  }
  ShareSystem s;
  s.K = K;
  s.t = t;
  s.field = PrimeField(theorem3_field_size(K, t));
  s.share_count = static_cast<int>(binomial(K, t));
  s.threshold = static_cast<int>(binomial(K - 1, t - 1));
  s.units_per_file = s.share_count - s.threshold;
  s.labels = k_subsets(K, t);
  const auto width = static_cast<std::size_t>(s.units_per_file + s.threshold);
  s.generator = FieldMatrix(s.field, static_cast<std::size_t>(s.share_count), width);
  for (int i = 0; i < s.share_count; ++i) {
    const auto x = static_cast<Element>(i);
    s.nodes.push_back(x);
    const auto r = static_cast<std::size_t>(i);
    if (i < s.units_per_file) s.generator.set(r, r, 1);
    for (int j = 0; j < s.threshold; ++j) {
      s.generator.set(r, static_cast<std::size_t>(s.units_per_file + j),
                      s.field.pow(x, static_cast<std::uint64_t>(j)));
    }
  }
  return s;
}

LinearScheme build_theorem3(int N, int K, int t) {
  if (N < 2) throw std::invalid_argument("theorem3 requires N >= 2");
  if (K < 3) throw std::invalid_argument("theorem3 requires K >= 3");
  if (t < 1 || t > K - 2) throw std::invalid_argument("theorem3 requires 1 <= t <= K-2");
  const ShareSystem shares = build_shares(K, t);
  const PrimeField f = shares.field;
  const int B = shares.units_per_file;
  const int m = shares.threshold;
  const auto cross_sets = k_subsets(K, t + 1);

  std::vector<std::string> keys;
  for (int n = 1; n <= N; ++n)
    for (int i = 1; i <= m; ++i) keys.push_back("S_" + std::to_string(n) + "^" + std::to_string(i));
  for (const auto& v : cross_sets) keys.push_back("S_{" + subset_name(v) + "}");
  VariableLayout layout(N, B, keys);
  const std::size_t total = layout.total();

  // Share rows over the global layout.
  ShareRows share_rows;
  share_rows.labels = shares.labels;
  for (int n = 1; n <= N; ++n) {
    FieldMatrix rows(f, 0, total);
    for (std::size_t s = 0; s < shares.labels.size(); ++s) {
      RowBuilder r(f, total);
      for (int j = 0; j < B; ++j)
        r.add(layout.file_column(n, j), shares.generator.at(s, static_cast<std::size_t>(j)));
      for (int j = 0; j < m; ++j)
        r.add(layout.key_column(static_cast<std::size_t>((n - 1) * m + j)),
              shares.generator.at(s, static_cast<std::size_t>(B + j)));
      rows.append_row(r.row());
    }
    share_rows.per_file.push_back(std::move(rows));
  }
  std::map<std::vector<int>, std::size_t> cross_col;
  for (std::size_t i = 0; i < cross_sets.size(); ++i) {
    cross_col[cross_sets[i]] = layout.key_column(static_cast<std::size_t>(N * m) + i);
  }
  const auto share = [&share_rows, &shares](int file, const std::vector<int>& label) {
    return share_rows.per_file[static_cast<std::size_t>(file - 1)].row(
        shares.label_index(label));
  };

  std::vector<int> head(static_cast<std::size_t>(t + 1));
  for (int i = 0; i <= t; ++i) head[static_cast<std::size_t>(i)] = i + 1;

  std::vector<FieldMatrix> caches;
  for (int k = 1; k <= K; ++k) {
    FieldMatrix z(f, 0, total);
    if (k <= t + 1) {
      for (int n = 1; n <= N; ++n)
        for (const auto& label : shares.labels)
          if (contains(label, k)) z.append_row(share(n, label));
      for (const auto& v : cross_sets) {
        if (!contains(v, k) || v == head) continue;
        RowBuilder r(f, total);
        r.add(cross_col.at(v));
        z.append_row(r.row());
      }
    } else {
      // Mask key S_{[t] u {k}}.
      std::vector<int> mask_set(head.begin(), head.end() - 1);
      mask_set.push_back(k);
      const std::size_t mask = cross_col.at(mask_set);
      for (int n = 1; n <= N; ++n)
        for (const auto& label : shares.labels) {
          if (!contains(label, k)) continue;
          RowBuilder r(f, total);
          r.add_row(share(n, label)).add(mask);
          z.append_row(r.row());
        }
      for (const auto& v : cross_sets) {
        if (!contains(v, k) || v == mask_set) continue;
        RowBuilder r(f, total);
        r.add(cross_col.at(v)).add(mask, f.neg(1));
        z.append_row(r.row());
      }
    }
    caches.push_back(std::move(z));
  }

  const Element head_coeff = f.reduce(t + 1);
  auto delivery = [f, layout, share_rows, shares, cross_sets, cross_col, head,
                   head_coeff](const DemandVector& d) {
    if (d.uniform()) return direct_send(f, layout, d[0]);
    const std::size_t total = layout.total();
    auto share_of = [&](int user, const std::vector<int>& v) {
      const int file = d[static_cast<std::size_t>(user - 1)];
      return share_rows.per_file[static_cast<std::size_t>(file - 1)].row(
          shares.label_index(without(v, user)));
    };
    FieldMatrix x(f, 0, total);
    RowBuilder first(f, total);
    for (int i : head) first.add_row(share_of(i, head));
    x.append_row(first.row());
    for (const auto& v : cross_sets) {
      if (v == head) continue;
      RowBuilder r(f, total);
      r.add(cross_col.at(v), head_coeff);
      for (int i : v) r.add_row(share_of(i, v));
      x.append_row(r.row());
    }
    return x;
  };
  return LinearScheme({SchemeKind::theorem3, N, K, t}, f, layout, std::move(caches), delivery,
                      "theorem3(N=" + std::to_string(N) + ",K=" + std::to_string(K) +
                          ",t=" + std::to_string(t) + ")",
                      std::move(share_rows));
}

LinearScheme build_scheme(const SchemeParams& p) {
  switch (p.kind) {
    case SchemeKind::otp:
      return build_otp(p.N, p.K);
    case SchemeKind::theorem1:
      if (p.N != 2) throw std::invalid_argument("theorem1 scheme requires N=2");
      return build_theorem1(p.K);
    case SchemeKind::theorem2:
      return build_theorem2(p.N, p.K);
    case SchemeKind::theorem3:
      if (!p.t) throw std::invalid_argument("theorem3 scheme requires t");
      return build_theorem3(p.N, p.K, *p.t);
    case SchemeKind::custom:
      break;
  }
  throw std::invalid_argument("cannot build a custom scheme from parameters");
}

}  // namespace seccache
