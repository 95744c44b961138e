#include "seccache/combinatorics.h"

#include <limits>
#include <stdexcept>

namespace seccache {

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::int64_t factor = n - k + i;
    if (result > std::numeric_limits<std::int64_t>::max() / factor) {
      throw std::overflow_error("binomial overflow");
    }
    result = result * factor / i;
  }
  return result;
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (n < 0 || k < 0 || k > n) return out;
  for (const auto& s : index_subsets(static_cast<std::size_t>(n), static_cast<std::size_t>(k))) {
    std::vector<int> v;
    v.reserve(s.size());
    for (auto i : s) v.push_back(static_cast<int>(i) + 1);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace seccache
