#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "caps.hpp"
#include "genset.hpp"
#include "terms.hpp"

namespace adlab {

struct BallOptions {
  unsigned overshoot = 4;
  unsigned threads = 1;
};

// Layered breadth-first closure of {0} under signed generator steps,
// restricted to a symmetric working span.  The span is wide enough that no
// path of <= h admitted terms can leave it, so layer indices are exact word
// lengths relative to the admitted term set.
class BallResult {
 public:
  unsigned radius() const { return radius_; }
  int64_t window() const { return window_; }
  int64_t term_bound() const { return term_bound_; }
  int64_t work_bound() const { return work_bound_; }
  const std::vector<int64_t>& terms() const { return terms_; }

  // Smallest layer containing n, for |n| <= window.
  std::optional<unsigned> length_of(int64_t n) const;

  // Deterministic witness reconstruction by greedy backtracking.
  Representation witness_of(int64_t n, const GeneratorSet& g) const;

  // Window elements whose layer is exactly h, ascending.
  std::vector<int64_t> sphere(unsigned h) const;

 private:
  friend BallResult ball(unsigned, int64_t, const GeneratorSet&,
                         const SearchCaps&, const BallOptions&);

  bool bit(unsigned layer, int64_t n) const {
    uint64_t idx = static_cast<uint64_t>(n + work_bound_);
    return (layers_[layer][idx >> 6] >> (idx & 63)) & 1u;
  }

  unsigned radius_ = 0;
  int64_t window_ = 0;
  int64_t term_bound_ = 0;
  int64_t work_bound_ = 0;
  std::vector<int64_t> terms_;  // positive admitted magnitudes, ascending
  std::vector<std::vector<uint64_t>> layers_;  // cumulative membership bits
};

BallResult ball(unsigned h, int64_t window, const GeneratorSet& g,
                const SearchCaps& caps, const BallOptions& options = {});

}  // namespace adlab
