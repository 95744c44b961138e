// Builders for the four secure caching schemes:
//
//   otp       one-time-pad baseline, any N: (M, R, L) = (1, K, K)
//   theorem1  N = 2, M = 1: R = K - 1 with K - 1 keys over F_3
//   theorem2  R = 1: M = (N-1)(K-1) over F_2
//   theorem3  general t in [1, K-2], built on non-standard secret sharing
//
// Uniform demands are always served by sending the requested file directly.

#pragma once

#include <vector>

#include "seccache/field.h"
#include "seccache/scheme.h"

namespace seccache {

/// Vandermonde-based shares of one file for parameters (K, t): C(K,t) shares,
/// any C(K-1,t-1) of which reveal nothing, all of which reveal the file.
struct ShareSystem {
  int K = 0;
  int t = 0;
  PrimeField field{2};
  int units_per_file = 0;  // B = C(K,t) - C(K-1,t-1)
  int threshold = 0;       // C(K-1,t-1): number of share keys
  int share_count = 0;     // C(K,t)
  std::vector<std::vector<int>> labels;  // t-subsets of [K], lexicographic
  std::vector<Element> nodes;            // x_i = i - 1
  /// share_count x (B + threshold); columns are [subfiles | keys].
  FieldMatrix generator{PrimeField{2}, 0, 0};

  std::size_t label_index(const std::vector<int>& label) const;
  /// Key-column block of the generator.
  FieldMatrix key_block() const;
};

/// Nonzero F_3 coefficients a_1..a_K with the per-file sums equal to 1.
struct CoefficientAssignment {
  std::vector<Element> a;
};

LinearScheme build_otp(int N, int K);

/// Requires a non-uniform demand over files {1, 2}.
CoefficientAssignment assign_coefficients(const DemandVector& d);

LinearScheme build_theorem1(int K);
LinearScheme build_theorem2(int N, int K);

/// Requires K >= 3 and 1 <= t <= K-2.
ShareSystem build_shares(int K, int t);
std::uint32_t theorem3_field_size(int K, int t);
LinearScheme build_theorem3(int N, int K, int t);

/// Dispatch on params.kind; throws std::invalid_argument on bad combinations.
LinearScheme build_scheme(const SchemeParams& params);

/// The B selector rows of W_d. Requires a uniform demand.
FieldMatrix uniform_delivery(const LinearScheme& s, const DemandVector& d);

}  // namespace seccache
