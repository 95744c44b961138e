// Reference implementations used only by the tests. None of them share code
// with the library's elimination routines.

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "seccache/field.h"

namespace oracle {

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d < n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// log_q of the number of distinct row combinations c * m, by enumeration.
inline std::size_t image_rank(const seccache::FieldMatrix& m) {
  const std::uint32_t q = m.q();
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::uint32_t> c(m.rows(), 0);
  while (true) {
    std::vector<std::uint32_t> v(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t j = 0; j < m.cols(); ++j) v[j] = (v[j] + c[r] * m.at(r, j)) % q;
    seen.insert(v);
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == q) c[i++] = 0;
    if (i == c.size()) break;
  }
  std::size_t k = 0;
  for (std::uint64_t p = 1; p < seen.size(); p *= q) ++k;
  return k;
}

inline seccache::FieldMatrix random_matrix(const seccache::PrimeField& f, std::size_t rows,
                                           std::size_t cols, std::mt19937_64& rng) {
  std::vector<seccache::Element> e(rows * cols);
  for (auto& x : e) x = static_cast<seccache::Element>(rng() % f.q());
  return seccache::FieldMatrix(f, rows, cols, std::move(e));
}

/// Sparse random matrix, so rank-deficient cases show up often.
inline seccache::FieldMatrix sparse_matrix(const seccache::PrimeField& f, std::size_t rows,
                                           std::size_t cols, std::mt19937_64& rng) {
  std::vector<seccache::Element> e(rows * cols);
  for (auto& x : e) x = rng() % 3 == 0 ? static_cast<seccache::Element>(rng() % f.q()) : 0;
  return seccache::FieldMatrix(f, rows, cols, std::move(e));
}

}  // namespace oracle
