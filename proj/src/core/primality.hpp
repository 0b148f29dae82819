#pragma once

#include <cstdint>
#include <vector>

namespace adlab {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(uint64_t n);

// Trial division + Pollard rho.  Returns (prime, exponent) pairs, primes ascending.
std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t n);

// All divisors of n, ascending.
std::vector<uint64_t> divisors_u64(uint64_t n);

// Sieve of Eratosthenes.
std::vector<uint32_t> primes_up_to(uint32_t limit);

}  // namespace adlab
