#include "length_bound.hpp"

#include "hashing.hpp"
#include "pair_decide.hpp"

namespace adlab {

const char* proof_kind_name(ProofKind k) {
  switch (k) {
    case ProofKind::Trivial: return "TRIVIAL";
    case ProofKind::Exact: return "EXACT";
    case ProofKind::Modular: return "MODULAR";
    case ProofKind::Exhaustive: return "EXHAUSTIVE";
  }
  return "TRIVIAL";
}

ProofKind proof_kind_from_name(const std::string& s) {
  if (s == "TRIVIAL") return ProofKind::Trivial;
  if (s == "EXACT") return ProofKind::Exact;
  if (s == "MODULAR") return ProofKind::Modular;
  if (s == "EXHAUSTIVE") return ProofKind::Exhaustive;
  fail(Errc::schema_mismatch, "unknown proof kind " + s);
}

nlohmann::json LengthBound::to_json() const {
  nlohmann::json j;
  j["n"] = to_dec(n);
  j["lower"] = lower;
  j["lower_proof"] = {{"kind", proof_kind_name(proof.kind)},
                      {"detail", proof.detail}};
  j["upper"] = upper ? nlohmann::json(*upper) : nlohmann::json();
  j["witness"] = witness ? witness->to_json() : nlohmann::json();
  j["status"] = status();
  if (caps) j["caps"] = caps->to_json();
  return j;
}

LengthBound LengthBound::from_json(const nlohmann::json& j) {
  LengthBound b;
  b.n = parse_int(j.at("n").get<std::string>());
  b.lower = j.at("lower").get<unsigned>();
  b.proof.kind =
      proof_kind_from_name(j.at("lower_proof").at("kind").get<std::string>());
  b.proof.detail = j.at("lower_proof").value("detail", nlohmann::json::object());
  if (!j.at("upper").is_null()) b.upper = j.at("upper").get<unsigned>();
  if (!j.at("witness").is_null())
    b.witness = Representation::from_json(j.at("witness"));
  if (j.contains("caps")) b.caps = SearchCaps::from_json(j.at("caps"));
  if ((b.upper.has_value()) != (b.witness.has_value()))
    fail(Errc::schema_mismatch, "upper and witness must agree");
  if (b.upper && b.lower > *b.upper)
    fail(Errc::schema_mismatch, "lower exceeds upper");
  return b;
}

namespace {

// Upper side of the bound: exact membership, then the exact two-term
// decision when supported (it sees witnesses beyond any magnitude ladder),
// then meet-in-the-middle for h >= 3.
struct UpperOutcome {
  std::optional<unsigned> h;
  std::optional<Representation> witness;
  SearchCaps effective;
  bool complete = true;
  bool two_term_exact = false;        // the h=2 side was decided exactly
  nlohmann::json two_term_proof;      // exclusion trace when exact and absent
};

UpperOutcome search_upper(const Int& n, unsigned h_max, const GeneratorSet& g,
                          const SearchCaps& caps, bool use_two_term,
                          unsigned threads) {
  UpperOutcome out;
  out.effective = caps;
  if (n == 0) {
    out.h = 0;
    out.witness = Representation{n, {}};
    return out;
  }
  if (h_max == 0) return out;
  if (g.contains_symmetric(n)) {
    // Exact membership; term_under_caps only narrows the witness form.
    Term t = term_under_caps(n, g, caps).value_or(Term::from_value(n));
    out.h = 1;
    out.witness = Representation{n, {t}};
    return out;
  }
  if (h_max == 1) return out;

  if (use_two_term && two_term_exact_supported(g)) {
    TwoTermOutcome two = decide_two_term(n, g);
    if (two.status == TwoTermOutcome::Status::Witness) {
      out.h = 2;
      out.witness = two.witness;
      out.two_term_exact = true;
      return out;
    }
    if (two.status == TwoTermOutcome::Status::Excluded) {
      out.two_term_exact = true;
      out.two_term_proof = two.proof;
    }
  }
  unsigned from = out.two_term_exact ? 3 : 2;
  if (from > h_max) return out;

  UpperSearch us = length_upper(n, h_max, g, caps, threads, from);
  out.complete = us.complete;
  out.effective = us.effective;
  out.h = us.h;
  out.witness = us.witness;
  return out;
}

}  // namespace

LengthBound compute_length_bound(const Int& n, unsigned h_max,
                                 const GeneratorSet& g, const SearchCaps& caps,
                                 const LowerOptions& opt, unsigned threads) {
  caps.validate();
  LengthBound b;
  b.n = n;
  if (n == 0) {
    b.lower = 0;
    b.proof = {ProofKind::Trivial, {{"reason", "n = 0"}}};
    b.upper = 0;
    b.witness = Representation{n, {}};
    return b;
  }

  UpperOutcome up =
      search_upper(n, h_max, g, caps, opt.use_two_term_exact, threads);
  b.upper = up.h;
  b.witness = up.witness;

  // Lower bound, strongest unconditional rung first.
  b.lower = 1;
  b.proof = {ProofKind::Trivial, {{"reason", "n != 0"}}};
  if (b.upper && *b.upper == 1) return b;

  if (!g.contains_symmetric(n)) {
    b.lower = 2;
    b.proof = {ProofKind::Exact, {{"method", "membership"},
                                  {"member", false}}};
  }
  if (b.upper && b.lower == *b.upper) return b;

  if (up.two_term_exact && !up.two_term_proof.is_null() &&
      !up.two_term_proof.empty() && b.lower == 2) {
    b.lower = 3;
    b.proof = {ProofKind::Exact, up.two_term_proof};
    b.proof.detail["method"] = "two_term_exclusion";
  }
  if (b.upper && b.lower >= *b.upper) return b;

  // Obstruction certificates: provided ones first, then a budgeted search
  // aimed at the strongest useful radius.
  auto apply_certificate = [&](const ObstructionCertificate& cert) {
    if (auto bound = certify_lower(n, cert)) {
      if (*bound > b.lower) {
        b.lower = *bound;
        b.proof = {ProofKind::Modular,
                   {{"certificate_id",
                     fnv1a64_hex(cert.to_json().dump())},
                    {"certificate", cert.to_json()}}};
      }
    }
  };
  if (opt.certificates) {
    for (const auto& cert : *opt.certificates) apply_certificate(cert);
  }
  if (opt.search_budget && b.upper && b.lower < *b.upper) {
    unsigned radius = *b.upper - 1;
    if (auto cert =
            find_obstruction(g, radius, *opt.search_budget, nullptr, n))
      apply_certificate(*cert);
  }
  if (b.upper && b.lower >= *b.upper) return b;

  // Exhaustive rung: the witness search already proved there is no shorter
  // representation within the (effective) caps.
  if (b.upper && b.lower < *b.upper) {
    b.lower = *b.upper;
    b.proof = {ProofKind::Exhaustive,
               {{"caps", up.effective.to_json()},
                {"complete_to_requested_caps", up.complete}}};
    b.caps = up.effective;
  } else if (!b.upper && h_max + 1 > b.lower) {
    b.lower = h_max + 1;
    b.proof = {ProofKind::Exhaustive,
               {{"caps", up.effective.to_json()},
                {"complete_to_requested_caps", up.complete},
                {"scanned_h_max", h_max}}};
    b.caps = up.effective;
  }
  return b;
}

LengthBound metric_distance(const Int& x, const Int& y, const GeneratorSet& g,
                            unsigned h_max, const SearchCaps& caps,
                            const LowerOptions& opt, unsigned threads) {
  return compute_length_bound(y - x, h_max, g, caps, opt, threads);
}

}  // namespace adlab
