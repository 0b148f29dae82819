#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "genset.hpp"
#include "ints.hpp"

namespace adlab {

// One signed generator.  Power-union terms carry (base, exponent); smooth
// terms carry only their value, since a smooth witness does not fix a
// factorization.
struct Term {
  int sign = 1;       // +1 or -1
  Int magnitude = 1;  // >= 1
  std::optional<uint64_t> base;
  std::optional<unsigned> exponent;

  Int value() const { return sign < 0 ? Int(-magnitude) : magnitude; }

  static Term from_value(const Int& v) {
    Term t;
    t.sign = v < 0 ? -1 : 1;
    t.magnitude = abs(v);
    return t;
  }

  static Term power(int sign, uint64_t base, unsigned exponent) {
    Term t;
    t.sign = sign;
    t.base = base;
    t.exponent = exponent;
    t.magnitude = ipow(Int(base), exponent);
    return t;
  }

  nlohmann::json to_json() const;
  static Term from_json(const nlohmann::json& j);
  bool operator==(const Term&) const = default;
};

// A word: a multiset of signed terms summing to the target.  Its length is
// the term count; it is an unconditional upper-bound witness for the target.
struct Representation {
  Int target = 0;
  std::vector<Term> terms;

  unsigned length() const { return static_cast<unsigned>(terms.size()); }

  Int term_sum() const {
    Int s = 0;
    for (const Term& t : terms) s += t.value();
    return s;
  }

  bool has_negation_pair() const;

  // Sort terms by descending magnitude, positive sign first among equals.
  void canonicalize();

  // Lexicographic order on the canonicalized value sequences.
  static bool lex_less(const Representation& a, const Representation& b);

  nlohmann::json to_json() const;
  static Representation from_json(const nlohmann::json& j);
  bool operator==(const Representation&) const = default;
};

}  // namespace adlab
