#pragma once

#include <cstddef>
#include <vector>

#include "caps.hpp"
#include "genset.hpp"
#include "terms.hpp"

namespace adlab {

inline constexpr std::size_t kDefaultUniverseLimit = 2'000'000;

// Positive generator terms admitted by the caps, ascending by magnitude,
// deduplicated (the value 1 appears once even with several bases).  The
// signed universe is the +/- expansion of this list.
std::vector<Term> term_universe(const GeneratorSet& g, const SearchCaps& caps,
                                std::size_t limit = kDefaultUniverseLimit);

// Signed values of term_universe, ascending.
std::vector<Int> term_universe_values(const GeneratorSet& g,
                                      const SearchCaps& caps,
                                      std::size_t limit = kDefaultUniverseLimit);

}  // namespace adlab
