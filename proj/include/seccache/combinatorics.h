#pragma once

#include <cstdint>
#include <vector>

namespace seccache {

/// C(n, k); zero when k < 0 or k > n. Throws std::overflow_error past 2^63.
std::int64_t binomial(int n, int k);

/// All k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k);

/// All k-subsets of {0..n-1} in lexicographic order, as index lists.
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k);

}  // namespace seccache
