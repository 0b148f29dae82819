#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "genset.hpp"
#include "ints.hpp"

namespace adlab {

struct DeltaReport {
  uint64_t n = 1;
  std::vector<uint64_t> primes;  // p with (p-1) | n, ascending

  std::size_t delta() const { return primes.size(); }
  nlohmann::json to_json() const;
};

// Exact: enumerate divisors d | n, keep the prime values d + 1.
DeltaReport delta(uint64_t n);

// h-fold signed sumset of S united with {0}, modulo m: h rounds of
// B <- B u (B+S) u (B-S) from B = {0}.  Sorted.
std::vector<uint64_t> signed_ball_mod(const std::vector<uint64_t>& S,
                                      unsigned h, uint64_t m);

// (2*closure_size + 1)^h, the a-priori bound on |signed_ball_mod|.
Int coverage_bound(uint64_t closure_size, unsigned h);

struct ObstructionBudget {
  uint64_t max_n = 1'000'000;
  unsigned max_q_count = 16;
  uint64_t max_modulus = uint64_t(1) << 22;  // absolute cap 2^30
};

// The unconditional lower-bound object: a modulus Q = prod(q), q prime,
// q not in the support, (q-1) | n, such that the radius-h signed ball of the
// generator residues does not cover Z/Q.  Every integer landing in a missing
// class has length >= h + 1.
struct ObstructionCertificate {
  explicit ObstructionCertificate(GeneratorSet g) : genset(std::move(g)) {}

  GeneratorSet genset;
  uint64_t n = 0;
  std::vector<uint64_t> q_list;
  uint64_t modulus = 1;
  unsigned h = 0;
  std::vector<uint64_t> closure;
  uint64_t ball_count = 0;
  uint64_t missing_count = 0;
  std::vector<uint64_t> ball;     // full list iff ball_count <= kFullListCap
  std::vector<uint64_t> missing;  // full list, or a sample when too large
  std::string ball_digest;
  bool full_lists = true;

  static constexpr uint64_t kFullListCap = 1'000'000;

  nlohmann::json to_json() const;
  static ObstructionCertificate from_json(const nlohmann::json& j);
};

// Producer-side revalidation of every certificate invariant (the independent
// verifier in certio re-derives everything with its own routines).
void recheck_certificate(const ObstructionCertificate& cert);

ObstructionCertificate build_certificate(const GeneratorSet& g, uint64_t n,
                                         unsigned h,
                                         const std::vector<uint64_t>& q_list);

struct ObstructionDiagnostics {
  uint64_t candidates_tried = 0;
  uint64_t largest_modulus = 0;
  double best_coverage_ratio = 1.0;  // |ball| / Q, smaller is closer
};

// Highly divisible candidates (lcm prefixes, primorial products) ranked by
// delta(n)/log(n) descending, n ascending among ties.
std::vector<uint64_t> obstruction_candidates(uint64_t max_n);

// First certificate found along the documented candidate order, optionally
// required to leave `target` in a missing class.  NONE on exhausted budget.
std::optional<ObstructionCertificate> find_obstruction(
    const GeneratorSet& g, unsigned h, const ObstructionBudget& budget,
    ObstructionDiagnostics* diag = nullptr,
    const std::optional<Int>& target = std::nullopt);

// Unconditional bound l(n) >= h+1 when n mod Q is missing; nullopt otherwise.
// Recheck failures raise VERIFICATION_FAILED.
std::optional<unsigned> certify_lower(const Int& n,
                                      const ObstructionCertificate& cert);

}  // namespace adlab
