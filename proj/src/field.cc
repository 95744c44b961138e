#include "seccache/field.h"

#include <sstream>
#include <stdexcept>

#include "seccache/rowspace.h"

namespace seccache {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t smallest_prime_at_least(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("smallest_prime_at_least: n must be >= 2");
  while (!is_prime(n)) ++n;
  return n;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) {
    throw std::invalid_argument("PrimeField: modulus " + std::to_string(q) +
                                " is not prime");
  }
}

Element PrimeField::reduce(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(q_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Element>(r);
}

Element PrimeField::pow(Element base, std::uint64_t exp) const {
  std::uint64_t result = 1 % q_;
  std::uint64_t b = base % q_;
  while (exp > 0) {
    if (exp & 1) result = (result * b) % q_;
    b = (b * b) % q_;
    exp >>= 1;
  }
  return static_cast<Element>(result);
}

Element PrimeField::inv(Element a) const {
  if (a % q_ == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
  return pow(a, q_ - 2);
}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
                         std::vector<Element> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("FieldMatrix: entry count does not match shape");
  }
  for (auto& e : data_) e %= field_.q();
}

FieldMatrix FieldMatrix::identity(PrimeField field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % field.q();
  return m;
}

FieldMatrix FieldMatrix::from_rows(PrimeField field, std::size_t cols,
                                   const std::vector<std::vector<Element>>& rows) {
  FieldMatrix m(field, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void FieldMatrix::append_row(std::span<const Element> values) {
  if (values.size() != cols_) {
    throw std::invalid_argument("FieldMatrix::append_row: length " +
                                std::to_string(values.size()) + " != cols " +
                                std::to_string(cols_));
  }
  for (Element v : values) data_.push_back(v % field_.q());
  ++rows_;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> indices) const {
  FieldMatrix out(field_, 0, cols_);
  out.data_.reserve(indices.size() * cols_);
  for (std::size_t i : indices) {
    if (i >= rows_) throw std::out_of_range("FieldMatrix::select_rows: row index");
    out.append_row(row(i));
  }
  return out;
}

std::vector<Element> FieldMatrix::apply(std::span<const Element> x) const {
  if (x.size() != cols_) {
    throw std::invalid_argument("FieldMatrix::apply: vector length mismatch");
  }
  std::vector<Element> y(rows_, 0);
  const std::uint64_t q = field_.q();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const Element* rp = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) acc = (acc + std::uint64_t{rp[c]} * x[c]) % q;
    y[r] = static_cast<Element>(acc);
  }
  return y;
}

FieldMatrix stack(const FieldMatrix& top, const FieldMatrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw std::invalid_argument("stack: column counts differ");
  }
  if (!(top.field() == bottom.field())) throw std::invalid_argument("stack: fields differ");
  std::vector<Element> data = top.entries();
  data.insert(data.end(), bottom.entries().begin(), bottom.entries().end());
  return FieldMatrix(top.field(), top.rows() + bottom.rows(), top.cols(), std::move(data));
}

FieldMatrix stack(std::span<const FieldMatrix> parts, const PrimeField& field,
                  std::size_t cols) {
  FieldMatrix out(field, 0, cols);
  for (const auto& p : parts) out = stack(out, p);
  return out;
}

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
  const auto& f = a.field();
  FieldMatrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Element aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.set(i, j, f.add(out.at(i, j), f.mul(aik, b.at(k, j))));
    }
  return out;
}

namespace detail {

std::vector<std::size_t> eliminate(std::vector<Element>& data, std::size_t rows,
                                   std::size_t width, std::size_t pivot_limit,
                                   const PrimeField& f) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  const std::uint64_t q = f.q();
  for (std::size_t col = 0; col < pivot_limit && lead < rows; ++col) {
    std::size_t sel = lead;
    while (sel < rows && data[sel * width + col] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != lead) {
      for (std::size_t c = 0; c < width; ++c)
        std::swap(data[sel * width + c], data[lead * width + c]);
    }
    Element* lr = data.data() + lead * width;
    const Element inv = f.inv(lr[col]);
    for (std::size_t c = col; c < width; ++c) lr[c] = f.mul(lr[c], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead) continue;
      Element* rr = data.data() + r * width;
      const Element factor = rr[col];
      if (factor == 0) continue;
      const std::uint64_t nf = q - factor;
      for (std::size_t c = col; c < width; ++c) {
        if (lr[c] != 0) rr[c] = static_cast<Element>((rr[c] + nf * lr[c]) % q);
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

}  // namespace detail

EchelonForm rref(const FieldMatrix& m) {
  std::vector<Element> data = m.entries();
  auto pivots = detail::eliminate(data, m.rows(), m.cols(), m.cols(), m.field());
  data.resize(pivots.size() * m.cols());
  return {FieldMatrix(m.field(), pivots.size(), m.cols(), std::move(data)),
          std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) {
  std::vector<Element> data = m.entries();
  return detail::eliminate(data, m.rows(), m.cols(), m.cols(), m.field()).size();
}

FieldMatrix zero_columns(const FieldMatrix& m, std::span<const std::size_t> cols) {
  FieldMatrix out = m;
  for (std::size_t c : cols) {
    if (c >= m.cols()) {
      throw std::out_of_range("zero_columns: column " + std::to_string(c) +
                              " out of range for " + std::to_string(m.cols()) +
                              " columns");
    }
    for (std::size_t r = 0; r < m.rows(); ++r) out.set(r, c, 0);
  }
  return out;
}

std::optional<std::vector<Element>> in_rowspace(const FieldMatrix& m,
                                                std::span<const Element> target) {
  return RowSpaceSolver(m).solve(target);
}

std::vector<Element> left_apply(std::span<const Element> c, const FieldMatrix& m) {
  if (c.size() != m.rows()) throw std::invalid_argument("left_apply: length mismatch");
  const auto& f = m.field();
  std::vector<Element> out(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (c[r] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[j] = f.add(out[j], f.mul(c[r], m.at(r, j)));
  }
  return out;
}

std::string to_string(const FieldMatrix& m) {
  std::ostringstream os;
  os << "F_" << m.q() << " " << m.rows() << "x" << m.cols() << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m.at(r, c);
    os << "]\n";
  }
  return os.str();
}

// RowSpaceSolver

RowSpaceSolver::RowSpaceSolver(const FieldMatrix& m)
    : field_(m.field()), rows_(m.rows()), cols_(m.cols()) {
  // Eliminate [m | I]; the right block records how each reduced row is built
  // from the original rows.
  width_ = cols_ + rows_;
  data_.assign(rows_ * width_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) data_[r * width_ + c] = m.at(r, c);
    data_[r * width_ + cols_ + r] = 1;
  }
  pivots_ = detail::eliminate(data_, rows_, width_, cols_, field_);
}

std::optional<std::vector<Element>> RowSpaceSolver::solve(
    std::span<const Element> target) const {
  if (target.size() != cols_) {
    throw std::invalid_argument("in_rowspace: target length " +
                                std::to_string(target.size()) + " != cols " +
                                std::to_string(cols_));
  }
  std::vector<Element> residual(target.begin(), target.end());
  for (auto& v : residual) v %= field_.q();
  std::vector<Element> coeffs(rows_, 0);
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Element alpha = residual[pivots_[i]];
    if (alpha == 0) continue;
    const Element* row = data_.data() + i * width_;
    for (std::size_t c = 0; c < cols_; ++c)
      residual[c] = field_.sub(residual[c], field_.mul(alpha, row[c]));
    for (std::size_t r = 0; r < rows_; ++r)
      coeffs[r] = field_.add(coeffs[r], field_.mul(alpha, row[cols_ + r]));
  }
  for (Element v : residual) {
    if (v != 0) return std::nullopt;
  }
  return coeffs;
}

}  // namespace seccache
