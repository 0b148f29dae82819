#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "core/certio.hpp"
#include "core/version.hpp"

using namespace adlab;

namespace {

bool verdict_fails(const Verdict& v, const std::string& name_fragment) {
  if (v.valid) return false;
  for (const auto& c : v.checks) {
    if (!c.pass && c.name.find(name_fragment) != std::string::npos)
      return true;
  }
  return false;
}

Representation rep_of(const Int& target, std::vector<Int> values) {
  Representation r;
  r.target = target;
  for (const Int& v : values) r.terms.push_back(Term::from_value(v));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("certificate files round-trip field for field") {
  auto g = GeneratorSet::smooth({2, 3});
  CertificateFile cert = make_upper_witness(g, rep_of(5, {2, 3}));
  CertificateFile back = CertificateFile::from_json(cert.to_json());
  CHECK(back.schema_version == cert.schema_version);
  CHECK(back.kind == cert.kind);
  CHECK(back.created == cert.created);
  CHECK(back.tool_version == cert.tool_version);
  CHECK(back.payload == cert.payload);
}

TEST_CASE("canonical payload bytes are reproducible") {
  auto g = GeneratorSet::smooth({2, 3});
  CertificateFile a = make_upper_witness(g, rep_of(5, {2, 3}));
  CertificateFile b = make_upper_witness(g, rep_of(5, {2, 3}));
  CHECK(canonical_payload(a.payload) == canonical_payload(b.payload));
  CHECK(certificate_id(a.payload) == certificate_id(b.payload));
}

TEST_CASE("unknown schema versions are rejected, never guessed") {
  auto g = GeneratorSet::smooth({2, 3});
  nlohmann::json j = make_upper_witness(g, rep_of(5, {2, 3})).to_json();
  j["schema_version"] = "2";
  CHECK_THROWS_AS(CertificateFile::from_json(j), Error);
}

TEST_CASE("witness verification recomputes the sum") {
  auto g = GeneratorSet::smooth({2, 3});
  CHECK(verify(make_upper_witness(g, rep_of(5, {2, 3}))).valid);

  Verdict tampered = verify(make_upper_witness(g, rep_of(5, {2, 2})));
  CHECK(verdict_fails(tampered, "sum"));

  Verdict alien = verify(make_upper_witness(g, rep_of(12, {10, 2})));
  CHECK(verdict_fails(alien, "membership"));

  Verdict cancelling = verify(make_upper_witness(g, rep_of(0, {4, -4})));
  CHECK(verdict_fails(cancelling, "pair"));
}

TEST_CASE("modular verification recomputes closure and ball") {
  auto g2 = GeneratorSet::smooth({2});
  ObstructionCertificate cert = build_certificate(g2, 72, 1, {73});
  CHECK(verify(make_lower_modular(cert, {5, 78})).valid);

  // The worked tampering example: swap missing residue 5 for 8 = 2^3.
  CertificateFile file = make_lower_modular(cert, {});
  nlohmann::json j = file.to_json();
  for (auto& r : j["payload"]["certificate"]["missing"]) {
    if (r.get<std::string>() == "5") r = "8";
  }
  Verdict v = verify(CertificateFile::from_json(j));
  CHECK(verdict_fails(v, "missing"));

  // A target inside the ball must be rejected.
  Verdict vt = verify(make_lower_modular(cert, {8}));
  CHECK(verdict_fails(vt, "targets"));
}

TEST_CASE("exhaustive records are conditional and replayable") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps small;
  small.magnitude_cap = 1024;
  CertificateFile file = make_lower_exhaustive(g, 139, 2, small);
  CHECK(verify(file).valid);

  nlohmann::json j = file.to_json();
  j["payload"]["status"] = "PROVEN";
  CHECK(verdict_fails(verify(CertificateFile::from_json(j)), "conditional"));

  // Raising the magnitude cap lets 2187 - 2048 through; replay catches it.
  j = file.to_json();
  j["payload"]["caps"]["magnitude_cap"] = "4096";
  CHECK(verdict_fails(verify(CertificateFile::from_json(j)), "scan_replay"));

  // A claim about a representable number is refuted outright.
  CertificateFile bogus = make_lower_exhaustive(g, 5, 2, small);
  CHECK(verdict_fails(verify(bogus), "scan_replay"));
}

TEST_CASE("lambda bundles verify end to end") {
  auto g = GeneratorSet::smooth({2, 3});
  LambdaOptions opt;
  opt.use_certificate_search = false;
  LambdaResult res = lambda(g, 2, SearchCaps::defaults_for(g), opt);
  CertificateFile bundle = make_lambda_bundle(g, res);
  Verdict v = verify(bundle);
  CHECK(v.valid);

  nlohmann::json j = bundle.to_json();
  j["payload"]["value"] = "6";
  CHECK_FALSE(verify(CertificateFile::from_json(j)).valid);

  j = bundle.to_json();
  j["payload"]["evidence"].erase(2);
  CHECK_FALSE(verify(CertificateFile::from_json(j)).valid);

  j = bundle.to_json();
  j["payload"]["evidence"][4]["witness"]["terms"][0]["value"] = "4";
  CHECK_FALSE(verify(CertificateFile::from_json(j)).valid);
}

TEST_CASE("exact exclusion evidence is re-derived by the verifier") {
  auto g = GeneratorSet::smooth({2, 3});
  LambdaOptions opt;
  opt.use_certificate_search = false;
  LambdaResult res = lambda(g, 3, SearchCaps::defaults_for(g), opt);
  REQUIRE(res.value == Int(103));
  CertificateFile bundle = make_lambda_bundle(g, res);
  Verdict v = verify(bundle);
  CHECK(v.valid);

  // Gutting the congruence kill of the value row must break verification.
  nlohmann::json j = bundle.to_json();
  auto& detail = j["payload"]["evidence"][102]["lower_proof"]["detail"];
  for (auto& branch : detail["branches"]) {
    if (branch.contains("kill_moduli"))
      branch["kill_moduli"] = nlohmann::json::array();
  }
  CHECK_FALSE(verify(CertificateFile::from_json(j)).valid);

  // Claiming the value one too early must break evidence completeness.
  j = bundle.to_json();
  j["payload"]["value"] = "102";
  CHECK_FALSE(verify(CertificateFile::from_json(j)).valid);
}

TEST_CASE("certificate files write and read back") {
  auto g = GeneratorSet::smooth({2, 3});
  CertificateFile cert = make_upper_witness(g, rep_of(5, {2, 3}));
  auto path = std::filesystem::temp_directory_path() / "adlab_cert_test.json";
  write_certificate(cert, path.string());
  CertificateFile back = read_certificate(path.string());
  CHECK(back.payload == cert.payload);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_certificate(path.string()), Error);
}

TEST_CASE("cache round-trips, keys on the request, and collects stale entries") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "adlab_cache_unit";
  fs::remove_all(dir);
  Cache cache(dir.string());

  nlohmann::json req = {{"op", "test"}, {"arg", "1"}};
  nlohmann::json res = {{"answer", 42}};
  CHECK_FALSE(cache.get(req).has_value());
  cache.put(req, res);
  auto hit = cache.get(req);
  REQUIRE(hit.has_value());
  CHECK(*hit == res);

  nlohmann::json other = {{"op", "test"}, {"arg", "2"}};
  CHECK_FALSE(cache.get(other).has_value());

  // A stale-version entry is invisible to get and removed by gc.
  {
    std::ofstream out(dir / "deadbeef.json");
    out << nlohmann::json{{"tool_version", "0.0.0"},
                          {"request", other},
                          {"result", res}}
               .dump();
  }
  CHECK_FALSE(cache.get(other).has_value());
  CHECK(cache.gc() == 1);
  CHECK(cache.get(req).has_value());
  fs::remove_all(dir);
}
