#include <doctest.h>

#include <functional>

#include "core/mitm.hpp"
#include "core/universe.hpp"

using namespace adlab;

namespace {

SearchCaps caps_mag(const Int& w) {
  SearchCaps caps;
  caps.magnitude_cap = w;
  return caps;
}

// Test oracle: exhaustive pair-free search over the signed universe.
bool brute_representable(const Int& n, unsigned h, const GeneratorSet& g,
                         const SearchCaps& caps) {
  std::vector<Int> values = term_universe_values(g, caps);
  std::vector<Int> picked;
  std::function<bool(std::size_t, unsigned, Int)> rec =
      [&](std::size_t from, unsigned left, Int sum) -> bool {
    if (left == 0) {
      if (sum != n) return false;
      for (std::size_t i = 0; i < picked.size(); ++i)
        for (std::size_t j = i + 1; j < picked.size(); ++j)
          if (picked[i] == -picked[j]) return false;
      return true;
    }
    for (std::size_t i = from; i < values.size(); ++i) {
      picked.push_back(values[i]);
      if (rec(i, left - 1, sum + values[i])) return true;
      picked.pop_back();
    }
    return false;
  };
  return rec(0, h, 0);
}

}  // namespace

TEST_CASE("term_universe matches the worked examples") {
  auto vals = [](const GeneratorSet& g, const SearchCaps& caps) {
    return term_universe_values(g, caps);
  };
  CHECK(vals(GeneratorSet::smooth({2, 3}), caps_mag(5)) ==
        std::vector<Int>{-4, -3, -2, -1, 1, 2, 3, 4});
  SearchCaps pu_caps = caps_mag(Int(1) << 64);
  pu_caps.exponent_caps[2] = 2;
  CHECK(vals(GeneratorSet::power_union({2}), pu_caps) ==
        std::vector<Int>{-4, -2, -1, 1, 2, 4});
  CHECK(vals(GeneratorSet::smooth({2}), caps_mag(1)) ==
        std::vector<Int>{-1, 1});
}

TEST_CASE("term universe deduplicates shared values") {
  auto u = term_universe(GeneratorSet::power_union({2, 4}), caps_mag(20));
  std::vector<Int> mags;
  for (const Term& t : u) mags.push_back(t.magnitude);
  CHECK(mags == std::vector<Int>{1, 2, 4, 8, 16});
}

TEST_CASE("is_representable finds and refuses correctly") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps caps = SearchCaps::defaults_for(g);

  auto rep5 = is_representable(5, 2, g, caps);
  REQUIRE(rep5.has_value());
  CHECK(rep5->length() == 2);
  CHECK(rep5->term_sum() == 5);
  CHECK_FALSE(rep5->has_negation_pair());

  auto rep0 = is_representable(0, 0, g, caps);
  REQUIRE(rep0.has_value());
  CHECK(rep0->length() == 0);

  // Exactly two terms cannot produce 0 without a cancelling pair.
  CHECK_FALSE(is_representable(0, 2, g, caps).has_value());
}

TEST_CASE("capped two-term scan over the full default universe") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps caps = SearchCaps::defaults_for(g);
  CHECK(caps.exponent_caps[2] == 512);
  CHECK(caps.exponent_caps[3] == 324);

  // 150 has two-term representations (e.g. 96 + 54 and 162 - 12).
  auto rep150 = is_representable(150, 2, g, caps);
  REQUIRE(rep150.has_value());
  CHECK(rep150->term_sum() == 150);
  CHECK(rep150->length() == 2);

  // 149 and 151 have none, even with exponents up to (512, 324).
  CHECK_FALSE(is_representable(149, 2, g, caps).has_value());
  CHECK_FALSE(is_representable(151, 2, g, caps).has_value());
}

TEST_CASE("length_upper matches the worked examples") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps caps = SearchCaps::defaults_for(g);

  UpperSearch one = length_upper(1, 4, g, caps);
  REQUIRE(one.h.has_value());
  CHECK(*one.h == 1);
  CHECK(one.witness->terms.size() == 1);
  CHECK(one.witness->terms[0].value() == 1);

  UpperSearch zero = length_upper(0, 4, g, caps);
  CHECK(*zero.h == 0);

  UpperSearch four = length_upper(4, 4, g, caps);
  CHECK(*four.h == 1);
  CHECK(four.witness->terms[0].value() == 4);
}

TEST_CASE("meet-in-the-middle agrees with brute force on small universes") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps caps = caps_mag(20);
  for (int n = -50; n <= 50; ++n) {
    for (unsigned h = 0; h <= 3; ++h) {
      CAPTURE(n); CAPTURE(h);
      auto rep = is_representable(n, h, g, caps);
      CHECK(rep.has_value() == brute_representable(n, h, g, caps));
      if (rep) {
        CHECK(rep->term_sum() == n);
        CHECK(rep->length() == h);
        CHECK_FALSE(rep->has_negation_pair());
      }
    }
  }
}

TEST_CASE("results are identical for any worker count") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps caps = caps_mag(100000);
  for (Int n : {Int(731), Int(1234), Int(-999)}) {
    auto seq = is_representable(n, 3, g, caps, 1);
    auto par = is_representable(n, 3, g, caps, 4);
    REQUIRE(seq.has_value() == par.has_value());
    if (seq) CHECK(seq->to_json() == par->to_json());
  }
}

TEST_CASE("enlarging caps never increases the reported length") {
  auto g = GeneratorSet::smooth({2, 3});
  SearchCaps small = caps_mag(64);
  SearchCaps big = caps_mag(100000);
  for (int n = 1; n <= 80; ++n) {
    UpperSearch a = length_upper(n, 4, g, small);
    UpperSearch b = length_upper(n, 4, g, big);
    if (a.h) {
      REQUIRE(b.h.has_value());
      CHECK(*b.h <= *a.h);
    }
  }
}
