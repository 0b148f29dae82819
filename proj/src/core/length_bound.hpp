#pragma once

#include <optional>

#include <json.hpp>

#include "caps.hpp"
#include "genset.hpp"
#include "mitm.hpp"
#include "sieve.hpp"
#include "terms.hpp"

namespace adlab {

// Provenance of a lower bound.  TRIVIAL and EXACT are finite elementary
// decisions, MODULAR rests on an obstruction certificate; all three are
// unconditional.  EXHAUSTIVE is valid only relative to its caps.
enum class ProofKind { Trivial, Exact, Modular, Exhaustive };

const char* proof_kind_name(ProofKind k);
ProofKind proof_kind_from_name(const std::string& s);

struct LowerProof {
  ProofKind kind = ProofKind::Trivial;
  nlohmann::json detail = nlohmann::json::object();
};

struct LengthBound {
  Int n = 0;
  unsigned lower = 0;
  LowerProof proof;
  std::optional<unsigned> upper;
  std::optional<Representation> witness;
  std::optional<SearchCaps> caps;  // present when any side is conditional

  bool unconditional_lower() const {
    return proof.kind != ProofKind::Exhaustive;
  }
  bool proven() const {
    return upper && lower == *upper && unconditional_lower();
  }
  std::string status() const {
    return proven() ? "PROVEN" : "CAP_CONDITIONAL";
  }

  nlohmann::json to_json() const;
  static LengthBound from_json(const nlohmann::json& j);
};

struct LowerOptions {
  bool use_two_term_exact = true;
  // Certificates to try via certify_lower, strongest radius first.
  const std::vector<ObstructionCertificate>* certificates = nullptr;
  // Budget for an on-the-fly obstruction search when a gap remains.
  std::optional<ObstructionBudget> search_budget;
};

// Upper bound by witness search, lower bound by the strongest applicable
// unconditional argument, exhaustive caps as the last resort.
LengthBound compute_length_bound(const Int& n, unsigned h_max,
                                 const GeneratorSet& g, const SearchCaps& caps,
                                 const LowerOptions& opt = {},
                                 unsigned threads = 1);

// d_A(x, y) = l_A(y - x).
LengthBound metric_distance(const Int& x, const Int& y, const GeneratorSet& g,
                            unsigned h_max, const SearchCaps& caps,
                            const LowerOptions& opt = {}, unsigned threads = 1);

}  // namespace adlab
