#include "universe.hpp"

#include <algorithm>
#include <map>

namespace adlab {

namespace {

void grow_smooth(const std::vector<uint64_t>& primes, const SearchCaps& caps,
                 std::size_t idx, const Int& value, std::size_t limit,
                 std::vector<Term>* out) {
  if (idx == primes.size()) {
    if (out->size() >= limit)
      fail(Errc::universe_too_large,
           "term universe exceeds " + std::to_string(limit) + " entries");
    out->push_back(Term::from_value(value));
    return;
  }
  uint64_t p = primes[idx];
  unsigned cap = caps.exponent_cap_for(p);
  Int v = value;
  for (unsigned e = 0; e <= cap && v <= caps.magnitude_cap; ++e) {
    grow_smooth(primes, caps, idx + 1, v, limit, out);
    v *= p;
  }
}

}  // namespace

std::vector<Term> term_universe(const GeneratorSet& g, const SearchCaps& caps,
                                std::size_t limit) {
  caps.validate();
  std::vector<Term> out;
  if (g.kind() == GenKind::Smooth) {
    grow_smooth(g.elements(), caps, 0, 1, limit, &out);
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
      return a.magnitude < b.magnitude;
    });
  } else {
    std::map<Int, Term> by_value;
    for (uint64_t b : g.elements()) {
      unsigned cap = caps.exponent_cap_for(b);
      Int v = 1;
      for (unsigned e = 0; e <= cap && v <= caps.magnitude_cap; ++e) {
        by_value.emplace(v, Term::power(1, b, e));
        if (by_value.size() > limit)
          fail(Errc::universe_too_large,
               "term universe exceeds " + std::to_string(limit) + " entries");
        v *= b;
      }
    }
    for (auto& [v, t] : by_value) out.push_back(t);
  }
  if (out.empty()) fail(Errc::internal, "empty term universe");
  return out;
}

std::vector<Int> term_universe_values(const GeneratorSet& g,
                                      const SearchCaps& caps,
                                      std::size_t limit) {
  std::vector<Term> terms = term_universe(g, caps, limit);
  std::vector<Int> out;
  out.reserve(terms.size() * 2);
  for (auto it = terms.rbegin(); it != terms.rend(); ++it)
    out.push_back(-it->magnitude);
  for (const Term& t : terms) out.push_back(t.magnitude);
  return out;
}

}  // namespace adlab
