#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>

#include <json.hpp>

#include "genset.hpp"
#include "ints.hpp"

namespace adlab {

// Search caps bound every conditional statement: a per-base exponent limit
// and a global magnitude limit W on |term value|.  Witnesses found under any
// caps are unconditional; only non-existence claims inherit the caps.
struct SearchCaps {
  std::map<uint64_t, unsigned> exponent_caps;  // base -> max exponent
  Int magnitude_cap = 0;                       // W >= 1

  // Exponent cap per base b of ceil(512 / log2(b)) so every base tops out
  // near 2^512, with W just above the largest single term.
  static SearchCaps defaults_for(const GeneratorSet& g) {
    SearchCaps caps;
    Int w = 1;
    for (uint64_t b : g.elements()) {
      unsigned cap = static_cast<unsigned>(
          std::ceil(512.0 / std::log2(static_cast<double>(b))));
      caps.exponent_caps[b] = cap;
      Int top = ipow(Int(b), cap);
      if (top > w) w = top;
    }
    caps.magnitude_cap = 2 * w;
    return caps;
  }

  unsigned exponent_cap_for(uint64_t base) const {
    auto it = exponent_caps.find(base);
    return it == exponent_caps.end() ? 100000u : it->second;
  }

  void validate() const {
    if (magnitude_cap < 1)
      fail(Errc::invalid_argument, "magnitude cap must be >= 1");
  }

  nlohmann::json to_json() const {
    nlohmann::json ec = nlohmann::json::object();
    for (const auto& [b, c] : exponent_caps) ec[std::to_string(b)] = c;
    return {{"exponent_caps", ec}, {"magnitude_cap", to_dec(magnitude_cap)}};
  }

  static SearchCaps from_json(const nlohmann::json& j) {
    SearchCaps caps;
    if (j.contains("exponent_caps")) {
      for (const auto& [k, v] : j.at("exponent_caps").items())
        caps.exponent_caps[parse_int(k).convert_to<uint64_t>()] =
            v.get<unsigned>();
    }
    if (j.contains("magnitude_cap"))
      caps.magnitude_cap = parse_int(j.at("magnitude_cap").get<std::string>());
    caps.validate();
    return caps;
  }

  bool operator==(const SearchCaps&) const = default;
};

}  // namespace adlab
