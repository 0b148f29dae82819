#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "error.hpp"

namespace adlab {

using Int = boost::multiprecision::cpp_int;

// Strict decimal parse: optional leading '-', digits only.
inline Int parse_int(const std::string& s) {
  if (s.empty()) fail(Errc::parse_error, "empty integer literal");
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) fail(Errc::parse_error, "bare sign is not an integer");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      fail(Errc::parse_error, "invalid integer literal: " + s);
  }
  return Int(s);
}

inline std::string to_dec(const Int& n) { return n.str(); }

inline Int ipow(const Int& base, unsigned exp) {
  Int r = 1, b = base;
  while (exp) {
    if (exp & 1u) r *= b;
    b *= b;
    exp >>= 1u;
  }
  return r;
}

// If n == base^e for some e >= 0, returns true and sets *exp_out.
inline bool is_power_of(Int n, uint64_t base, unsigned* exp_out = nullptr) {
  if (n <= 0 || base < 2) return false;
  unsigned e = 0;
  while (n % base == 0) {
    n /= base;
    ++e;
  }
  if (n != 1) return false;
  if (exp_out) *exp_out = e;
  return true;
}

// Divides out all factors p from *n; returns the exponent removed.
inline unsigned remove_factor(Int* n, uint64_t p) {
  unsigned e = 0;
  while (*n % p == 0) {
    *n /= p;
    ++e;
  }
  return e;
}

inline Int binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r *= Int(n - k + i);
    r /= Int(i);
  }
  return r;
}

struct IntHash {
  std::size_t operator()(const Int& v) const {
    return static_cast<std::size_t>(hash_value(v));
  }
};

}  // namespace adlab
