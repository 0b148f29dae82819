#include <doctest.h>

#include <random>
#include <set>

#include "core/primality.hpp"
#include "core/sieve.hpp"

using namespace adlab;

TEST_CASE("delta matches the worked examples") {
  CHECK(delta(1).primes == std::vector<uint64_t>{2});
  CHECK(delta(2).primes == std::vector<uint64_t>{2, 3});
  CHECK(delta(12).primes == std::vector<uint64_t>{2, 3, 5, 7, 13});
  CHECK(delta(12).delta() == 5);
  CHECK_THROWS_AS(delta(0), Error);
}

TEST_CASE("delta matches the direct prime-scan oracle") {
  auto primes = primes_up_to(2002);
  for (uint64_t n = 1; n <= 2000; ++n) {
    std::vector<uint64_t> expect;
    for (uint32_t p : primes) {
      if (p > n + 1) break;
      if (n % (p - 1) == 0) expect.push_back(p);
    }
    CHECK(delta(n).primes == expect);
  }
}

TEST_CASE("signed_ball_mod matches the worked examples") {
  CHECK(signed_ball_mod({1, 2, 4}, 1, 7) ==
        std::vector<uint64_t>{0, 1, 2, 3, 4, 5, 6});
  CHECK(signed_ball_mod({1, 2, 4}, 0, 7) == std::vector<uint64_t>{0});
  auto g2 = GeneratorSet::smooth({2});
  auto ball73 = signed_ball_mod(g2.residue_closure(73), 1, 73);
  CHECK(ball73 == std::vector<uint64_t>{0, 1, 2, 4, 8, 9, 16, 18, 32, 36, 37,
                                        41, 55, 57, 64, 65, 69, 71, 72});
  CHECK(!std::binary_search(ball73.begin(), ball73.end(), uint64_t(5)));
}

TEST_CASE("signed_ball_mod grows monotonically and stabilizes") {
  std::mt19937 rng(17);
  for (int it = 0; it < 200; ++it) {
    uint64_t m = 3 + rng() % 500;
    std::set<uint64_t> sset;
    std::size_t k = 1 + rng() % 5;
    while (sset.size() < k) sset.insert(rng() % m);
    std::vector<uint64_t> S(sset.begin(), sset.end());
    std::vector<uint64_t> prev{0};
    bool stable = false;
    for (unsigned h = 1; h <= 5; ++h) {
      auto cur = signed_ball_mod(S, h, m);
      CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      CHECK(Int(cur.size()) <= coverage_bound(S.size(), h));
      CHECK(cur.size() <= m);
      if (stable) CHECK(cur == prev);
      if (cur == prev) stable = true;
      prev = std::move(cur);
    }
  }
}

TEST_CASE("coverage_bound matches the worked examples") {
  CHECK(coverage_bound(9, 1) == 19);
  CHECK(coverage_bound(5, 0) == 1);
  CHECK(coverage_bound(1, 3) == 27);
  CHECK_THROWS_AS(coverage_bound(0, 1), Error);
}

TEST_CASE("the mod-73 instance reproduces exactly") {
  auto g2 = GeneratorSet::smooth({2});
  ObstructionCertificate cert = build_certificate(g2, 72, 1, {73});
  CHECK(cert.modulus == 73);
  CHECK(cert.closure.size() == 9);
  CHECK(cert.ball_count == 19);
  CHECK(cert.missing_count == 54);
  CHECK(std::binary_search(cert.missing.begin(), cert.missing.end(),
                           uint64_t(5)));
  CHECK_NOTHROW(recheck_certificate(cert));

  CHECK(certify_lower(5, cert) == 2u);
  CHECK(certify_lower(78, cert) == 2u);       // 78 = 73 + 5
  CHECK_FALSE(certify_lower(0, cert).has_value());
  CHECK_FALSE(certify_lower(8, cert).has_value());  // 8 = 2^3 is a generator
}

TEST_CASE("tampered certificates are rejected") {
  auto g2 = GeneratorSet::smooth({2});
  ObstructionCertificate cert = build_certificate(g2, 72, 1, {73});

  ObstructionCertificate bad = cert;
  bad.missing[0] = 8;  // 8 = 2^3 lies in the ball
  CHECK_THROWS_AS(recheck_certificate(bad), Error);

  bad = cert;
  bad.n = 71;  // 72 does not divide... (73-1) no longer divides n
  CHECK_THROWS_AS(recheck_certificate(bad), Error);

  bad = cert;
  bad.closure.pop_back();
  CHECK_THROWS_AS(recheck_certificate(bad), Error);

  bad = cert;
  bad.h = 2;
  CHECK_THROWS_AS(recheck_certificate(bad), Error);
}

TEST_CASE("find_obstruction returns verifying certificates") {
  auto g2 = GeneratorSet::smooth({2});
  ObstructionBudget budget;
  budget.max_n = 5000;
  auto cert = find_obstruction(g2, 1, budget);
  REQUIRE(cert.has_value());
  CHECK_NOTHROW(recheck_certificate(*cert));
  CHECK(cert->missing_count > 0);

  // Deterministic: the same call returns the same certificate.
  auto again = find_obstruction(g2, 1, budget);
  REQUIRE(again.has_value());
  CHECK(again->to_json() == cert->to_json());

  // Radius 0 is trivially obstructed.
  auto h0 = find_obstruction(GeneratorSet::smooth({2, 3}), 0, budget);
  REQUIRE(h0.has_value());
  CHECK(h0->ball_count == 1);

  // Power unions obstruct the same way.
  auto pu = find_obstruction(GeneratorSet::power_union({2}), 1, budget);
  REQUIRE(pu.has_value());
  CHECK_NOTHROW(recheck_certificate(*pu));
}

TEST_CASE("find_obstruction can require a target residue to be missing") {
  auto g2 = GeneratorSet::smooth({2});
  ObstructionBudget budget;
  budget.max_n = 100000;
  auto cert = find_obstruction(g2, 1, budget, nullptr, Int(5));
  REQUIRE(cert.has_value());
  CHECK(certify_lower(5, *cert) == 2u);
}

TEST_CASE("exhausted budgets yield diagnostics instead of certificates") {
  auto g = GeneratorSet::smooth({2, 3});
  ObstructionBudget budget;
  budget.max_n = 2;  // only n = 2, q = 7 admissible; radius 2 covers Z/7
  ObstructionDiagnostics diag;
  auto cert = find_obstruction(g, 2, budget, &diag);
  CHECK_FALSE(cert.has_value());
  CHECK(diag.candidates_tried >= 1);

  // A budget that forbids every q cannot produce a certificate.
  ObstructionBudget no_q;
  no_q.max_q_count = 0;
  CHECK_FALSE(find_obstruction(GeneratorSet::smooth({2}), 1, no_q).has_value());
}

TEST_CASE("higher-radius certificates exist for the powers of two") {
  auto g2 = GeneratorSet::smooth({2});
  ObstructionBudget budget;
  budget.max_n = 100000;
  budget.max_modulus = uint64_t(1) << 24;
  auto cert = find_obstruction(g2, 2, budget);
  REQUIRE(cert.has_value());
  CHECK(cert->h == 2);
  CHECK_NOTHROW(recheck_certificate(*cert));
}

TEST_CASE("certificates survive a JSON round trip") {
  auto g2 = GeneratorSet::smooth({2});
  ObstructionCertificate cert = build_certificate(g2, 72, 1, {73});
  ObstructionCertificate back =
      ObstructionCertificate::from_json(cert.to_json());
  CHECK(back.to_json() == cert.to_json());
  CHECK_NOTHROW(recheck_certificate(back));
}
