#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lambda.hpp"
#include "length_bound.hpp"
#include "sieve.hpp"

namespace adlab {

enum class CertKind { UpperWitness, LowerModular, LowerExhaustive, LambdaBundle };

const char* cert_kind_name(CertKind k);
CertKind cert_kind_from_name(const std::string& s);

struct CertificateFile {
  std::string schema_version;  // always "1"; unknown versions are rejected
  CertKind kind = CertKind::UpperWitness;
  std::string created;
  std::string tool_version;
  nlohmann::json payload;

  nlohmann::json to_json() const;
  static CertificateFile from_json(const nlohmann::json& j);
};

// Canonical bytes of a payload: sorted keys, decimal-string integers, no
// floating point anywhere.  Same payload, same bytes.
std::string canonical_payload(const nlohmann::json& payload);
std::string certificate_id(const nlohmann::json& payload);

struct VerdictCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Verdict {
  bool valid = false;
  std::vector<VerdictCheck> checks;
  nlohmann::json to_json() const;
};

// Independent verification: re-executes the defining computations with
// verifier-local routines rather than trusting the producer.
Verdict verify(const CertificateFile& cert);

CertificateFile make_upper_witness(const GeneratorSet& g,
                                   const Representation& rep);
CertificateFile make_lower_modular(const ObstructionCertificate& cert,
                                   const std::vector<Int>& targets);
CertificateFile make_lower_exhaustive(const GeneratorSet& g, const Int& n,
                                      unsigned excluded_h,
                                      const SearchCaps& caps);
CertificateFile make_lambda_bundle(const GeneratorSet& g,
                                   const LambdaResult& result);

void write_certificate(const CertificateFile& cert, const std::string& path);
CertificateFile read_certificate(const std::string& path);

}  // namespace adlab
