#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adlab {

// FNV-1a, 64-bit; used for cache keys and residue-set digests.  Stable across
// platforms, documented in the certificate format notes.
inline uint64_t fnv1a64(const void* data, std::size_t len,
                        uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string fnv1a64_hex(const std::string& s) {
  uint64_t h = fnv1a64(s.data(), s.size());
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Digest of a sorted residue list, little-endian u64 stream.
inline std::string residue_digest(const std::vector<uint64_t>& sorted) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint64_t v : sorted) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = (v >> (8 * i)) & 0xff;
    h = fnv1a64(bytes, 8, h);
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

}  // namespace adlab
