// Rank-based checks of the correctness and security conditions.
//
// With G = [Z_k; X_d] over the layout, and units as the entropy measure:
//   H(W_{d_k} | Z_k, X_d) = rank(G with W_{d_k} zeroed) + B - rank(G)
//   I(W_{others}; Z_k, X_d) = rank(G) - rank(G with other files zeroed)

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seccache/scheme.h"

namespace seccache {

struct CorrectnessCheck {
  bool pass = false;
  std::size_t rank_full = 0;
  std::size_t rank_masked_requested = 0;
  std::size_t file_units = 0;
};

struct SecurityCheck {
  bool pass = false;
  std::size_t rank_full = 0;
  std::size_t rank_masked_others = 0;
};

CorrectnessCheck check_correctness(const LinearScheme& s, const DemandVector& d,
                                   std::size_t user);
SecurityCheck check_security(const LinearScheme& s, const DemandVector& d,
                             std::size_t user);
/// Security of an arbitrary observation matrix for a user requesting `file`.
SecurityCheck check_security_of(const LinearScheme& s, const FieldMatrix& observed,
                                int file);

struct DemandPolicy {
  enum class Kind { all, sample };
  Kind kind = Kind::all;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;

  static DemandPolicy all() { return {}; }
  static DemandPolicy sample(std::uint64_t count, std::uint64_t seed) {
    return {Kind::sample, count, seed};
  }
};

/// Demand indices selected by the policy, sorted. Sampling always includes
/// the uniform demands, then fills up to `count` with distinct seeded draws.
std::vector<std::uint64_t> select_demands(int files, int users, const DemandPolicy& policy,
                                          std::uint64_t cap = kDefaultDemandCap);

struct PairResult {
  DemandVector demand;
  std::size_t user = 0;
  CorrectnessCheck correctness;
  SecurityCheck security;
};

struct VerificationReport {
  std::string label;
  DemandPolicy policy;
  std::uint64_t demands_checked = 0;
  std::vector<PairResult> pairs;  // sorted by demand, then user
  bool pass = false;

  std::vector<const PairResult*> failures() const;
};

/// Runs both checks on every (demand, user) pair under the policy. Work is
/// spread over SECCACHE_WORKERS threads (default: hardware concurrency);
/// the report does not depend on the worker count.
VerificationReport verify_all(const LinearScheme& s, const DemandPolicy& policy,
                              std::uint64_t cap = kDefaultDemandCap);

/// Recovers W_{d_k}'s B unit symbols from observed cache and delivery
/// symbols. Throws NotDecodable when the correctness condition fails.
std::vector<Element> decode(const LinearScheme& s, const DemandVector& d, std::size_t user,
                            const std::vector<Element>& cache_symbols,
                            const std::vector<Element>& delivery_symbols);

struct SimulationResult {
  bool pass = false;
  std::vector<Element> input;                   // v: file units then key units
  std::vector<Element> delivery;                // X_d v, after any corruption
  std::vector<std::vector<Element>> decoded;    // per user
  std::vector<bool> user_ok;
};

/// Draws v from a seeded generator, runs placement and delivery, decodes for
/// every user and compares with the ground truth. `corrupt_row` adds 1 to
/// that delivery symbol before decoding.
SimulationResult simulate(const LinearScheme& s, const DemandVector& d, std::uint64_t seed,
                          std::optional<std::size_t> corrupt_row = std::nullopt);

/// Worker count from SECCACHE_WORKERS, else hardware concurrency (>= 1).
unsigned worker_count();

}  // namespace seccache
