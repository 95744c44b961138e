// Brute-force entropies of small schemes, and the structural identities that
// every scheme at M = 1 or R = 1 must satisfy.
//
// All inputs (file units and key units) are i.i.d. uniform over F_q, so the
// joint distribution of any collection of linear observations is uniform on
// its image. brute_entropy() counts that image by enumerating every input
// vector and never touches a rank computation, which makes it an independent
// check on the rank-based verifier.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seccache/scheme.h"

namespace seccache {

struct VariableRef {
  enum class Kind { file, cache, delivery, share_set };

  Kind kind = Kind::file;
  int file = 0;           // file (1-based) for file / share_set
  std::size_t user = 0;   // cache owner (0-based)
  DemandVector demand;    // delivery
  std::vector<std::size_t> shares;  // share_set: indices into ShareRows::labels

  static VariableRef of_file(int n);
  static VariableRef of_cache(std::size_t k);
  static VariableRef of_delivery(DemandVector d);
  static VariableRef of_shares(int n, std::vector<std::size_t> share_indices);

  std::string name() const;
};

FieldMatrix resolve(const LinearScheme& s, const VariableRef& v);
FieldMatrix resolve_all(const LinearScheme& s, std::span<const VariableRef> vars);

struct EntropyResult {
  std::size_t value = 0;  // units (log_q of the image size)
  bool uniform = false;
  std::uint64_t image_size = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Number of input vectors, q^total (saturating).
std::uint64_t input_space_size(const LinearScheme& s);

/// Exact entropy by enumerating all q^total inputs. Throws CapExceeded past
/// max_enum and std::logic_error when the image is not uniform or its size is
/// not a power of q.
EntropyResult brute_entropy(const LinearScheme& s, std::span<const VariableRef> vars,
                            std::uint64_t max_enum = kDefaultEnumerationCap);

/// Rank-based entropy in units.
std::size_t rank_entropy(const LinearScheme& s, std::span<const VariableRef> vars);

struct RankAgreementOptions {
  std::size_t subset_size_cap = 4;
  std::uint64_t max_enum = kDefaultEnumerationCap;
  /// Delivery variables; all demands when N^K fits, else a seeded sample.
  std::size_t max_deliveries = 32;
  /// Adds, for each file, a threshold-sized and a full share set.
  bool include_share_sets = true;
};

struct RankAgreementReport {
  bool pass = false;
  std::size_t variables = 0;
  std::uint64_t collections_checked = 0;
  std::vector<std::string> mismatches;
};

/// The oracle's variable pool for a scheme under the given options.
std::vector<VariableRef> oracle_variables(const LinearScheme& s,
                                          const RankAgreementOptions& options);

/// For every collection of at most subset_size_cap pool variables (including
/// the empty one): brute-force entropy == rank, with a uniform image.
RankAgreementReport check_rank_agreement(const LinearScheme& s,
                                         const RankAgreementOptions& options = {});

struct LemmaReport {
  bool pass = false;
  std::uint64_t identities_checked = 0;
  std::vector<std::string> failures;
};

/// Cache determinism given (W_{d_s}, X_d) and file/cache independence.
/// Throws std::invalid_argument unless memory_of(s) == 1.
LemmaReport check_lemma1_lemma2(const LinearScheme& s);

/// Delivery determinism given (W_a, Z_t) and file/delivery independence,
/// with least-demand representatives plus `sampled_choices` random ones.
/// Throws std::invalid_argument unless worst_case_rate(s) == 1.
LemmaReport check_lemma3_lemma4(const LinearScheme& s, std::size_t sampled_choices = 10,
                                std::uint64_t seed = 0);

struct SharingReport {
  bool pass = false;
  int threshold = 0;
  int share_count = 0;
  bool exhaustive = false;
  std::uint64_t subsets_checked = 0;
  std::uint64_t leaking_subsets = 0;
  bool reconstructs = false;
};

/// Any C(K-1,t-1) shares leak nothing; all C(K,t) shares recover the file.
/// Exhaustive over subsets when C(K,t) <= 30, else `samples` seeded draws.
SharingReport check_secret_sharing(int K, int t, std::uint64_t samples = 1000,
                                   std::uint64_t seed = 0);

}  // namespace seccache
