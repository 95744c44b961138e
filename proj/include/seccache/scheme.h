// Data model of a linear secure caching scheme.
//
// Every quantity the server handles (file subfiles, random keys) is one
// "unit" of the global input vector v. A cache or a delivery signal is a
// matrix over v, so entropies measured in units are matrix ranks.

#pragma once

#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seccache/field.h"
#include "seccache/rational.h"

namespace seccache {

enum class SchemeKind { otp, theorem1, theorem2, theorem3, custom };

std::string_view to_string(SchemeKind kind);
std::optional<SchemeKind> parse_scheme_kind(std::string_view name);

/// Column layout of v: N files of B units each, then the key units.
class VariableLayout {
 public:
  VariableLayout(int files, int units_per_file, std::vector<std::string> key_names);

  int files() const { return files_; }
  int units_per_file() const { return units_per_file_; }
  const std::vector<std::string>& key_names() const { return key_names_; }
  std::size_t key_count() const { return key_names_.size(); }
  std::size_t total() const {
    return static_cast<std::size_t>(files_) * units_per_file_ + key_names_.size();
  }

  /// Column of unit `unit` (0-based) of file `file` (1-based).
  std::size_t file_column(int file, int unit) const;
  std::vector<std::size_t> file_columns(int file) const;
  /// Columns of every file except `file`.
  std::vector<std::size_t> other_file_columns(int file) const;
  std::size_t key_column(std::size_t key_index) const;
  /// Throws std::out_of_range for an unknown label.
  std::size_t key_column(const std::string& name) const;

  friend bool operator==(const VariableLayout& a, const VariableLayout& b) {
    return a.files_ == b.files_ && a.units_per_file_ == b.units_per_file_ &&
           a.key_names_ == b.key_names_;
  }

 private:
  int files_;
  int units_per_file_;
  std::vector<std::string> key_names_;
  std::unordered_map<std::string, std::size_t> key_index_;
};

/// Request profile (d_1, ..., d_K). Files are 1-based; users are indexed
/// 0..K-1 in the API.
class DemandVector {
 public:
  DemandVector() = default;
  explicit DemandVector(std::vector<int> files);

  std::size_t users() const { return files_.size(); }
  int operator[](std::size_t user) const { return files_.at(user); }
  const std::vector<int>& files() const { return files_; }
  bool uniform() const;
  /// "(1,1,2)"
  std::string to_string() const;

  friend auto operator<=>(const DemandVector&, const DemandVector&) = default;

 private:
  std::vector<int> files_;
};

/// N^K, saturating at UINT64_MAX.
std::uint64_t demand_count(int files, int users);
/// The index-th demand in lexicographic order.
DemandVector demand_at(int files, int users, std::uint64_t index);
std::uint64_t demand_index(int files, const DemandVector& d);

/// Lexicographic enumeration of [N]^K.
class DemandRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = DemandVector;
    using difference_type = std::ptrdiff_t;
    using pointer = const DemandVector*;
    using reference = const DemandVector&;

    iterator() = default;
    iterator(int files, std::vector<int> current, bool done)
        : files_(files), current_(std::move(current)), done_(done) {}
    const DemandVector& operator*() const { return value_ = DemandVector(current_); }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& o) const {
      return done_ == o.done_ && (done_ || current_ == o.current_);
    }

   private:
    int files_ = 0;
    std::vector<int> current_;
    bool done_ = true;
    mutable DemandVector value_;
  };

  DemandRange(int files, int users);
  iterator begin() const;
  iterator end() const { return iterator(); }

 private:
  int files_;
  int users_;
};

DemandRange demands_iter(int files, int users);

/// Share rows of a secret-sharing based scheme: for each file, one row per
/// share over the global layout, in the order of `labels`.
struct ShareRows {
  std::vector<std::vector<int>> labels;  // t-subsets of users, 1-based
  std::vector<FieldMatrix> per_file;     // index n-1 for file n
};

struct SchemeParams {
  SchemeKind kind = SchemeKind::custom;
  int N = 0;
  int K = 0;
  std::optional<int> t;
};

/// Immutable linear scheme: caches Z_k = cache(k) v, deliveries
/// X_d = delivery(d) v.
class LinearScheme {
 public:
  using DeliveryFn = std::function<FieldMatrix(const DemandVector&)>;

  LinearScheme(SchemeParams params, PrimeField field, VariableLayout layout,
               std::vector<FieldMatrix> caches, DeliveryFn delivery,
               std::string label, std::optional<ShareRows> shares = std::nullopt);

  const SchemeParams& params() const { return params_; }
  const PrimeField& field() const { return field_; }
  const VariableLayout& layout() const { return layout_; }
  int files() const { return layout_.files(); }
  int users() const { return static_cast<int>(caches_.size()); }
  int units_per_file() const { return layout_.units_per_file(); }
  const std::string& label() const { return label_; }
  const std::vector<FieldMatrix>& caches() const { return caches_; }
  const FieldMatrix& cache(std::size_t user) const { return caches_.at(user); }
  const std::optional<ShareRows>& shares() const { return shares_; }
  Rational unit_weight() const { return Rational(1, units_per_file()); }

  /// Validates the demand against (N, K) and the result against the layout.
  FieldMatrix delivery(const DemandVector& d) const;

 private:
  SchemeParams params_;
  PrimeField field_;
  VariableLayout layout_;
  std::vector<FieldMatrix> caches_;
  DeliveryFn delivery_;
  std::string label_;
  std::optional<ShareRows> shares_;
};

inline constexpr std::uint64_t kDefaultDemandCap = 1'000'000;

bool cache_sizes_uniform(const LinearScheme& s);
/// max_k rows(Z_k) / B.
Rational memory_of(const LinearScheme& s);
/// max over all N^K demands of rows(X_d) / B; throws CapExceeded past `cap`.
Rational worst_case_rate(const LinearScheme& s, std::uint64_t cap = kDefaultDemandCap);
/// |keys| / B.
Rational randomness_of(const LinearScheme& s);

/// Selector rows e_c^T for the given columns.
FieldMatrix selector_rows(const PrimeField& field, std::size_t total,
                          const std::vector<std::size_t>& columns);

}  // namespace seccache
