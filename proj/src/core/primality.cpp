#include "primality.hpp"

#include <algorithm>
#include <numeric>

namespace adlab {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1u) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1u;
  }
  return r;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }
  // This witness set is deterministic for every n < 3.3e24, so in particular
  // for the full uint64 range.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

uint64_t pollard_rho(uint64_t n) {
  if ((n & 1u) == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod_u64(x, x, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(uint64_t n, std::vector<uint64_t>* out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out->push_back(n);
    return;
  }
  uint64_t d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t n) {
  std::vector<uint64_t> primes;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_rec(n, &primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<uint64_t, unsigned>> out;
  for (uint64_t p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1u);
  }
  return out;
}

std::vector<uint64_t> divisors_u64(uint64_t n) {
  std::vector<uint64_t> divs{1};
  for (auto [p, e] : factor_u64(n)) {
    std::size_t count = divs.size();
    uint64_t pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<uint32_t> primes_up_to(uint32_t limit) {
  std::vector<bool> sieve(static_cast<std::size_t>(limit) + 1, true);
  std::vector<uint32_t> out;
  if (limit < 2) return out;
  sieve[0] = sieve[1] = false;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!sieve[i]) continue;
    out.push_back(static_cast<uint32_t>(i));
    for (uint64_t j = i * i; j <= limit; j += i) sieve[j] = false;
  }
  return out;
}

}  // namespace adlab
