#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "genset.hpp"
#include "terms.hpp"

namespace adlab {

// One exponential pair equation  sp*p^x + sq*q^y = c  with x >= xlo, y >= ylo.
struct PairEquation {
  uint64_t p = 2;
  uint64_t q = 3;
  int sp = 1;
  int sq = -1;
  Int c = 0;  // nonzero
  unsigned xlo = 0;
  unsigned ylo = 0;
};

struct PairEqOutcome {
  enum class Status { Solved, Excluded, Unknown };
  Status status = Status::Unknown;
  // All solutions inside the scan range (there is rarely more than one).
  std::vector<std::pair<unsigned, unsigned>> solutions;
  unsigned scan_x_max = 0;  // scans covered x <= scan_x_max (any y) ...
  unsigned scan_y_max = 0;  // ... and y <= scan_y_max (any x)
  // Moduli whose combined congruence constraints are unsatisfiable for
  // x > scan_x_max, y > scan_y_max.  Present iff Excluded.
  std::vector<uint64_t> kill_moduli;
};

// Decides the equation outright: a bounded scan (complete for x <= X0 or
// y <= Y0) plus a congruence sieve on the exponent classes that, when it
// succeeds, rules out all larger solutions unconditionally.
PairEqOutcome decide_pair_equation(const PairEquation& eq);

// Re-checks an exclusion claim with plain loops; used by the verifier, which
// must not trust the producer's sieve.
bool recheck_pair_exclusion(const PairEquation& eq, unsigned scan_x_max,
                            unsigned scan_y_max,
                            const std::vector<uint64_t>& kill_moduli);

struct TwoTermOutcome {
  enum class Status { Witness, Excluded, Unknown };
  Status status = Status::Unknown;
  std::optional<Representation> witness;  // lex-least among those found
  nlohmann::json proof;                   // exclusion trace when Excluded
};

// True when the exact two-term decision procedure covers this generating
// set: smooth sets over exactly two primes, and power unions of at most
// eight bases.  Other sets fall back to cap-bounded search.
bool two_term_exact_supported(const GeneratorSet& g);

// Decides whether |n| is the sum or difference of exactly two generators,
// unconditionally when supported: complete sum scan, reduction of the
// unbounded difference case by common smooth divisors, and congruence kills
// of the residual pure-power equations.
TwoTermOutcome decide_two_term(const Int& n, const GeneratorSet& g);

}  // namespace adlab
