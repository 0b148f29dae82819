#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ints.hpp"

namespace adlab {

enum class GenKind { Smooth, PowerUnion };

// An infinite symmetric generating set of Z, described by its positive half:
// either all products of a fixed finite prime set, or the union of the power
// towers of a fixed base set.  1 is always a member (empty product / zeroth
// power), so the set generates Z.
class GeneratorSet {
 public:
  static GeneratorSet smooth(std::vector<uint64_t> primes);
  static GeneratorSet power_union(std::vector<uint64_t> bases);

  GenKind kind() const { return kind_; }
  const std::vector<uint64_t>& elements() const { return elements_; }

  // Distinct primes dividing some generator (the primes themselves for a
  // smooth set, the prime factors of the bases for a power union).
  const std::vector<uint64_t>& prime_support() const { return support_; }

  // Exact membership of n >= 1.  n <= 0 is never a member.
  bool contains(const Int& n) const;
  // Membership of |n|; 0 is never a member.
  bool contains_symmetric(const Int& n) const;

  // { a in A : 1 <= a <= bound }, ascending, no duplicates.
  std::vector<Int> enumerate_up_to(const Int& bound) const;

  // { a mod m : a in A }, ascending.  Requires gcd(support, m) = 1.
  std::vector<uint64_t> residue_closure(uint64_t modulus) const;

  std::string describe() const;
  nlohmann::json to_json() const;
  static GeneratorSet from_json(const nlohmann::json& j);

  bool operator==(const GeneratorSet& other) const = default;

 private:
  GeneratorSet(GenKind kind, std::vector<uint64_t> elements,
               std::vector<uint64_t> support)
      : kind_(kind),
        elements_(std::move(elements)),
        support_(std::move(support)) {}

  GenKind kind_;
  std::vector<uint64_t> elements_;
  std::vector<uint64_t> support_;
};

}  // namespace adlab
