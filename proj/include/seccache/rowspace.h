#pragma once

#include <optional>
#include <span>
#include <vector>

#include "seccache/field.h"

namespace seccache {

namespace detail {
// Gauss-Jordan elimination in place on a rows x width row-major block,
// choosing pivots only among the first pivot_limit columns. Returns the
// pivot column of each leading row.
std::vector<std::size_t> eliminate(std::vector<Element>& data, std::size_t rows,
                                   std::size_t width, std::size_t pivot_limit,
                                   const PrimeField& f);
}  // namespace detail

/// Factorizes m once so repeated row-space membership queries are cheap.
class RowSpaceSolver {
 public:
  explicit RowSpaceSolver(const FieldMatrix& m);

  std::size_t rank() const { return pivots_.size(); }

  /// Coefficients c with c * m = target, or nullopt.
  std::optional<std::vector<Element>> solve(std::span<const Element> target) const;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_ = 0;
  std::vector<Element> data_;
  std::vector<std::size_t> pivots_;
};

}  // namespace seccache
