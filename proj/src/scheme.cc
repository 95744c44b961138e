#include "seccache/scheme.h"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "seccache/errors.h"

namespace seccache {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::otp: return "otp";
    case SchemeKind::theorem1: return "theorem1";
    case SchemeKind::theorem2: return "theorem2";
    case SchemeKind::theorem3: return "theorem3";
    case SchemeKind::custom: return "custom";
  }
  return "custom";
}

std::optional<SchemeKind> parse_scheme_kind(std::string_view name) {
  for (auto k : {SchemeKind::otp, SchemeKind::theorem1, SchemeKind::theorem2,
                 SchemeKind::theorem3, SchemeKind::custom}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

VariableLayout::VariableLayout(int files, int units_per_file,
                               std::vector<std::string> key_names)
    : files_(files), units_per_file_(units_per_file), key_names_(std::move(key_names)) {
  if (files < 1 || units_per_file < 1) {
    throw std::invalid_argument("VariableLayout: need at least one file and one unit");
  }
  for (std::size_t i = 0; i < key_names_.size(); ++i) {
    if (!key_index_.emplace(key_names_[i], i).second) {
      throw std::invalid_argument("VariableLayout: duplicate key label " + key_names_[i]);
    }
  }
}

std::size_t VariableLayout::file_column(int file, int unit) const {
  if (file < 1 || file > files_ || unit < 0 || unit >= units_per_file_) {
    throw std::out_of_range("VariableLayout::file_column: file " + std::to_string(file) +
                            " unit " + std::to_string(unit));
  }
  return static_cast<std::size_t>(file - 1) * units_per_file_ + unit;
}

std::vector<std::size_t> VariableLayout::file_columns(int file) const {
  std::vector<std::size_t> cols;
  for (int u = 0; u < units_per_file_; ++u) cols.push_back(file_column(file, u));
  return cols;
}

std::vector<std::size_t> VariableLayout::other_file_columns(int file) const {
  std::vector<std::size_t> cols;
  for (int n = 1; n <= files_; ++n) {
    if (n == file) continue;
    for (int u = 0; u < units_per_file_; ++u) cols.push_back(file_column(n, u));
  }
  return cols;
}

std::size_t VariableLayout::key_column(std::size_t key_index) const {
  if (key_index >= key_names_.size()) throw std::out_of_range("VariableLayout::key_column");
  return static_cast<std::size_t>(files_) * units_per_file_ + key_index;
}

std::size_t VariableLayout::key_column(const std::string& name) const {
  auto it = key_index_.find(name);
  if (it == key_index_.end()) throw std::out_of_range("unknown key label " + name);
  return key_column(it->second);
}

DemandVector::DemandVector(std::vector<int> files) : files_(std::move(files)) {
  for (int f : files_) {
    if (f < 1) throw std::invalid_argument("DemandVector: file indices are 1-based");
  }
}

bool DemandVector::uniform() const {
  return std::adjacent_find(files_.begin(), files_.end(), std::not_equal_to<>()) ==
         files_.end();
}

std::string DemandVector::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < files_.size(); ++i) os << (i ? "," : "") << files_[i];
  os << ")";
  return os.str();
}

std::uint64_t demand_count(int files, int users) {
  std::uint64_t n = 1;
  for (int k = 0; k < users; ++k) {
    if (n > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(files)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= static_cast<std::uint64_t>(files);
  }
  return n;
}

DemandVector demand_at(int files, int users, std::uint64_t index) {
  std::vector<int> d(users, 1);
  for (int k = users - 1; k >= 0; --k) {
    d[k] = static_cast<int>(index % files) + 1;
    index /= files;
  }
  return DemandVector(std::move(d));
}

std::uint64_t demand_index(int files, const DemandVector& d) {
  std::uint64_t index = 0;
  for (int f : d.files()) index = index * files + static_cast<std::uint64_t>(f - 1);
  return index;
}

DemandRange::iterator& DemandRange::iterator::operator++() {
  for (std::size_t i = current_.size(); i-- > 0;) {
    if (current_[i] < files_) {
      ++current_[i];
      return *this;
    }
    current_[i] = 1;
  }
  done_ = true;
  current_.clear();
  return *this;
}

DemandRange::DemandRange(int files, int users) : files_(files), users_(users) {
  if (files < 1 || users < 1) throw std::invalid_argument("demands_iter: N, K must be >= 1");
}

DemandRange::iterator DemandRange::begin() const {
  return iterator(files_, std::vector<int>(users_, 1), false);
}

DemandRange demands_iter(int files, int users) { return DemandRange(files, users); }

LinearScheme::LinearScheme(SchemeParams params, PrimeField field, VariableLayout layout,
                           std::vector<FieldMatrix> caches, DeliveryFn delivery,
                           std::string label, std::optional<ShareRows> shares)
    : params_(std::move(params)),
      field_(field),
      layout_(std::move(layout)),
      caches_(std::move(caches)),
      delivery_(std::move(delivery)),
      label_(std::move(label)),
      shares_(std::move(shares)) {
  if (caches_.empty()) throw std::invalid_argument("LinearScheme: no users");
  for (const auto& z : caches_) {
    if (z.cols() != layout_.total() || !(z.field() == field_)) {
      throw std::invalid_argument("LinearScheme: cache matrix does not match layout");
    }
  }
  if (!delivery_) throw std::invalid_argument("LinearScheme: missing delivery rule");
}

FieldMatrix LinearScheme::delivery(const DemandVector& d) const {
  if (d.users() != caches_.size()) {
    throw std::invalid_argument("demand " + d.to_string() + " has wrong length for K=" +
                                std::to_string(caches_.size()));
  }
  for (int f : d.files()) {
    if (f > files()) {
      throw std::invalid_argument("demand " + d.to_string() + " names a file outside [1," +
                                  std::to_string(files()) + "]");
    }
  }
  FieldMatrix x = delivery_(d);
  if (x.cols() != layout_.total() || !(x.field() == field_)) {
    throw std::logic_error("delivery matrix does not match layout for " + d.to_string());
  }
  return x;
}

bool cache_sizes_uniform(const LinearScheme& s) {
  const auto rows = s.cache(0).rows();
  return std::all_of(s.caches().begin(), s.caches().end(),
                     [&](const FieldMatrix& z) { return z.rows() == rows; });
}

Rational memory_of(const LinearScheme& s) {
  std::size_t rows = 0;
  for (const auto& z : s.caches()) rows = std::max(rows, z.rows());
  return Rational(static_cast<std::int64_t>(rows), s.units_per_file());
}

Rational worst_case_rate(const LinearScheme& s, std::uint64_t cap) {
  const auto count = demand_count(s.files(), s.users());
  if (count > cap) {
    throw CapExceeded("demand space too large; use sampled verification", count, cap);
  }
  std::size_t rows = 0;
  for (const auto& d : demands_iter(s.files(), s.users())) {
    rows = std::max(rows, s.delivery(d).rows());
  }
  return Rational(static_cast<std::int64_t>(rows), s.units_per_file());
}

Rational randomness_of(const LinearScheme& s) {
  return Rational(static_cast<std::int64_t>(s.layout().key_count()), s.units_per_file());
}

FieldMatrix selector_rows(const PrimeField& field, std::size_t total,
                          const std::vector<std::size_t>& columns) {
  FieldMatrix m(field, columns.size(), total);
  for (std::size_t i = 0; i < columns.size(); ++i) m.set(i, columns[i], 1);
  return m;
}

}  // namespace seccache
