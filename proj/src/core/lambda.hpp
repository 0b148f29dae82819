#pragma once

#include <optional>
#include <vector>

#include "cache.hpp"
#include "length_bound.hpp"

namespace adlab {

struct LambdaOptions {
  uint64_t n_max = 1'000'000;
  ObstructionBudget budget;
  bool use_certificate_search = true;
  unsigned threads = 1;
};

// lambda_A(h): the smallest positive integer of length exactly h, or the
// frontier up to which it is excluded.
struct LambdaResult {
  unsigned h = 1;
  std::optional<Int> value;       // resolved answer
  std::optional<Int> lower_bound; // lambda(h) >= lower_bound when unresolved
  std::string status = "PROVEN";  // for resolved values
  std::vector<LengthBound> evidence;  // one entry per scanned N, ascending
  SearchCaps caps;

  nlohmann::json to_json(const GeneratorSet& g) const;
};

LambdaResult lambda(const GeneratorSet& g, unsigned h, const SearchCaps& caps,
                    const LambdaOptions& options = {});

// Per-N length bounds for N = 1..range_max with h_max = h, deterministic,
// chunk-cached, order-preserving under any worker count.
std::vector<LengthBound> exclusion_table(const GeneratorSet& g, unsigned h,
                                         uint64_t range_max,
                                         const SearchCaps& caps,
                                         unsigned threads = 1,
                                         Cache* cache = nullptr);

}  // namespace adlab
