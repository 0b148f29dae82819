#include "terms.hpp"

#include <algorithm>

namespace adlab {

nlohmann::json Term::to_json() const {
  nlohmann::json j;
  j["sign"] = sign;
  j["value"] = to_dec(magnitude);
  if (base) {
    j["base"] = std::to_string(*base);
    j["exponent"] = *exponent;
  }
  return j;
}

Term Term::from_json(const nlohmann::json& j) {
  Term t;
  t.sign = j.at("sign").get<int>();
  if (t.sign != 1 && t.sign != -1)
    fail(Errc::schema_mismatch, "term sign must be +1 or -1");
  t.magnitude = parse_int(j.at("value").get<std::string>());
  if (t.magnitude < 1) fail(Errc::schema_mismatch, "term value must be >= 1");
  if (j.contains("base")) {
    Int b = parse_int(j.at("base").get<std::string>());
    if (b < 2 || b > Int(UINT64_MAX))
      fail(Errc::schema_mismatch, "term base out of range");
    t.base = b.convert_to<uint64_t>();
    if (!j.contains("exponent"))
      fail(Errc::schema_mismatch, "term base without exponent");
    t.exponent = j.at("exponent").get<unsigned>();
  }
  return t;
}

bool Representation::has_negation_pair() const {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (terms[i].magnitude == terms[j].magnitude &&
          terms[i].sign != terms[j].sign)
        return true;
    }
  }
  return false;
}

void Representation::canonicalize() {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
    return a.sign > b.sign;
  });
}

bool Representation::lex_less(const Representation& a, const Representation& b) {
  Representation ca = a, cb = b;
  ca.canonicalize();
  cb.canonicalize();
  std::size_t n = std::min(ca.terms.size(), cb.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    Int va = ca.terms[i].value(), vb = cb.terms[i].value();
    if (va != vb) return va < vb;
  }
  return ca.terms.size() < cb.terms.size();
}

nlohmann::json Representation::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Term& t : terms) arr.push_back(t.to_json());
  return {{"target", to_dec(target)},
          {"length", length()},
          {"terms", arr}};
}

Representation Representation::from_json(const nlohmann::json& j) {
  Representation r;
  r.target = parse_int(j.at("target").get<std::string>());
  for (const auto& tj : j.at("terms")) r.terms.push_back(Term::from_json(tj));
  if (j.contains("length") && j.at("length").get<unsigned>() != r.length())
    fail(Errc::schema_mismatch, "representation length disagrees with terms");
  return r;
}

}  // namespace adlab
