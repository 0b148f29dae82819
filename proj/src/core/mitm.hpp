#pragma once

#include <optional>

#include "caps.hpp"
#include "genset.hpp"
#include "terms.hpp"

namespace adlab {

// If |n| is a single admissible term under the caps, return it signed for n.
std::optional<Term> term_under_caps(const Int& n, const GeneratorSet& g,
                                    const SearchCaps& caps);

// Decides n = sum of exactly h signed terms within caps, meet-in-the-middle:
// sums of floor(h/2) terms go into a value-keyed table, sums of ceil(h/2)
// terms are scanned against it.  Representations containing a cancelling
// +a/-a pair are never returned (such a word is never minimal); for h >= 4
// the single-witness table can in rare cases hide an alternative pair-free
// split, in which case a shorter representation of n always exists.
// NONE under caps is a conditional answer; the caps travel with the result.
std::optional<Representation> is_representable(const Int& n, unsigned h,
                                               const GeneratorSet& g,
                                               const SearchCaps& caps,
                                               unsigned threads = 1);

struct UpperSearch {
  std::optional<unsigned> h;
  std::optional<Representation> witness;
  // Caps actually exhausted for the "no smaller h" side of the claim.  Equal
  // to the requested caps when the search was complete.
  SearchCaps effective;
  bool complete = true;
};

// Smallest h in [h_min, h_max] admitting a witness, with the witness (h_min
// lets callers skip rungs they have already decided exactly).  Witnesses are
// unconditional; the NONE/exactness side is conditional on `effective`.
UpperSearch length_upper(const Int& n, unsigned h_max, const GeneratorSet& g,
                         const SearchCaps& caps, unsigned threads = 1,
                         unsigned h_min = 0);

}  // namespace adlab
