// Exact arithmetic and dense linear algebra over prime fields F_q.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace seccache {

using Element = std::uint32_t;

/// The prime field F_q. Construction rejects composite moduli.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q);

  std::uint32_t q() const { return q_; }

  Element reduce(std::int64_t v) const;
  Element add(Element a, Element b) const { return (a + b) % q_; }
  Element sub(Element a, Element b) const { return (a + q_ - b) % q_; }
  Element neg(Element a) const { return a == 0 ? 0 : q_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((std::uint64_t{a} * b) % q_);
  }
  /// Multiplicative inverse; throws std::domain_error for zero.
  Element inv(Element a) const;
  Element pow(Element base, std::uint64_t exp) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

bool is_prime(std::uint64_t n);

/// Least prime p >= n. Requires n >= 2.
std::uint32_t smallest_prime_at_least(std::uint32_t n);

/// Dense row-major matrix over F_q.
class FieldMatrix {
 public:
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);
  /// Entries are reduced into [0, q-1].
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
              std::vector<Element> entries);

  static FieldMatrix identity(PrimeField field, std::size_t n);
  /// Builds from nested rows; all rows must have length `cols`.
  static FieldMatrix from_rows(PrimeField field, std::size_t cols,
                               const std::vector<std::vector<Element>>& rows);

  const PrimeField& field() const { return field_; }
  std::uint32_t q() const { return field_.q(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Element at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Element v) {
    data_[r * cols_ + c] = v % field_.q();
  }
  std::span<const Element> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Element> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<Element>& entries() const { return data_; }

  /// Appends one row; length must equal cols().
  void append_row(std::span<const Element> values);

  FieldMatrix transpose() const;
  /// Selects the given rows, in order.
  FieldMatrix select_rows(std::span<const std::size_t> indices) const;

  /// Matrix-vector product m * x.
  std::vector<Element> apply(std::span<const Element> x) const;

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

/// Vertical concatenation; column counts and fields must agree.
FieldMatrix stack(const FieldMatrix& top, const FieldMatrix& bottom);
FieldMatrix stack(std::span<const FieldMatrix> parts, const PrimeField& field,
                  std::size_t cols);

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b);

struct EchelonForm {
  FieldMatrix reduced;               // RREF, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column per row of `reduced`
};

/// Reduced row echelon form. Pivots are the first nonzero entry in column
/// order, so identical inputs always give identical output.
EchelonForm rref(const FieldMatrix& m);

std::size_t rank(const FieldMatrix& m);

/// Copy of m with the given columns set to zero, i.e. m(I - sum E_c).
/// Throws std::out_of_range for an index >= m.cols().
FieldMatrix zero_columns(const FieldMatrix& m, std::span<const std::size_t> cols);

/// Returns c with c * m = target, or nullopt when target is outside the row
/// space. Throws std::invalid_argument when target.size() != m.cols().
std::optional<std::vector<Element>> in_rowspace(const FieldMatrix& m,
                                                std::span<const Element> target);

/// row-vector * matrix.
std::vector<Element> left_apply(std::span<const Element> c, const FieldMatrix& m);

std::string to_string(const FieldMatrix& m);

}  // namespace seccache
