#include <doctest.h>

#include "core/ball.hpp"
#include "core/certio.hpp"
#include "core/length_bound.hpp"

using namespace adlab;

// Two independent routes to the same quantity: the layered bitset BFS and
// the meet-in-the-middle bound machinery.  With identical caps and the
// exact two-term decision switched off, both are exhaustive over the same
// term set and must agree everywhere.

TEST_CASE("ball layers and length bounds agree route for route") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps caps;
  caps.magnitude_cap = 2000;
  BallResult bfs = ball(4, 500, g, caps);
  LowerOptions opt;
  opt.use_two_term_exact = false;
  for (int64_t n = -500; n <= 500; ++n) {
    CAPTURE(n);
    LengthBound b = compute_length_bound(Int(n), 4, g, caps, opt);
    auto layer = bfs.length_of(n);
    CHECK(layer.has_value() == b.upper.has_value());
    if (layer && b.upper) CHECK(*layer == *b.upper);
  }
}

TEST_CASE("the exact two-term route only ever improves the capped route") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps tight;
  tight.magnitude_cap = 2000;
  for (int64_t n = 1; n <= 300; ++n) {
    CAPTURE(n);
    LowerOptions capped;
    capped.use_two_term_exact = false;
    LengthBound with = compute_length_bound(Int(n), 4, g, tight);
    LengthBound without = compute_length_bound(Int(n), 4, g, tight, capped);
    REQUIRE(with.upper.has_value());
    REQUIRE(without.upper.has_value());
    CHECK(*with.upper <= *without.upper);
    // 139 = 2187 - 2048 is the canonical case the tight caps cannot see.
    if (n == 139) {
      CHECK(*with.upper == 2);
      CHECK(*without.upper == 3);
    }
  }
}

TEST_CASE("reported lengths are symmetric under negation") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps caps = SearchCaps::defaults_for(g);
  for (int64_t n : {5, 103, 139, 150, 1234}) {
    LengthBound pos = compute_length_bound(Int(n), 3, g, caps);
    LengthBound neg = compute_length_bound(Int(-n), 3, g, caps);
    CHECK(pos.upper == neg.upper);
    CHECK(pos.lower == neg.lower);
  }
}

TEST_CASE("power-union lambda bundles verify through the independent path") {
  auto pu = GeneratorSet::power_union({2, 3});
  LambdaOptions opt;
  opt.use_certificate_search = false;
  LambdaResult res = lambda(pu, 3, SearchCaps::defaults_for(pu), opt);
  REQUIRE(res.value == Int(21));
  CertificateFile bundle = make_lambda_bundle(pu, res);
  CHECK(verify(bundle).valid);

  nlohmann::json j = bundle.to_json();
  j["payload"]["value"] = "20";
  CHECK_FALSE(verify(CertificateFile::from_json(j)).valid);
}

TEST_CASE("frontier bundles verify") {
  auto g = GeneratorSet::smooth({2, 3});
  LambdaOptions opt;
  opt.use_certificate_search = false;
  opt.n_max = 120;
  LambdaResult res = lambda(g, 4, SearchCaps::defaults_for(g), opt);
  REQUIRE(res.lower_bound == Int(120));
  CHECK(verify(make_lambda_bundle(g, res)).valid);
}
