#include "mitm.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

#include "universe.hpp"

namespace adlab {

namespace {

// Enumeration guards: the table must stay in memory, the scan only in time.
constexpr std::size_t kTableGuard = 4'000'000;
constexpr std::size_t kScanGuard = 60'000'000;

Int multiset_count(std::size_t options, unsigned picks) {
  return binomial(options + picks - 1, picks);
}

struct SignedUniverse {
  std::vector<Term> positive;  // ascending magnitude
  // signed index i: i < positive.size() -> -positive[rev], else +positive
  std::vector<Int> values;     // ascending, size 2*positive

  explicit SignedUniverse(std::vector<Term> pos) : positive(std::move(pos)) {
    values.reserve(positive.size() * 2);
    for (auto it = positive.rbegin(); it != positive.rend(); ++it)
      values.push_back(-it->magnitude);
    for (const Term& t : positive) values.push_back(t.magnitude);
  }

  Term term_at(std::size_t i) const {
    std::size_t n = positive.size();
    Term t = i < n ? positive[n - 1 - i] : positive[i - n];
    t.sign = i < n ? -1 : 1;
    return t;
  }
};

using Multiset = std::vector<uint32_t>;  // signed indices, non-decreasing

Representation to_rep(const SignedUniverse& u, const Int& target,
                      const Multiset& a, const Multiset& b) {
  Representation r;
  r.target = target;
  for (uint32_t i : a) r.terms.push_back(u.term_at(i));
  for (uint32_t i : b) r.terms.push_back(u.term_at(i));
  r.canonicalize();
  return r;
}

// Enumerate all non-decreasing index multisets of the given size, calling
// fn(sum, multiset).  first_lo/first_hi restrict the first index (for
// partitioning a scan across threads).
template <typename Fn>
void for_each_multiset(const SignedUniverse& u, unsigned size,
                       std::size_t first_lo, std::size_t first_hi, Fn&& fn) {
  if (size == 0) {
    Multiset empty;
    fn(Int(0), empty);
    return;
  }
  Multiset idx(size);
  std::vector<Int> partial(size + 1);
  partial[0] = 0;

  auto rec = [&](auto&& self, unsigned depth, std::size_t lo) -> void {
    std::size_t hi = depth == 0 ? first_hi : u.values.size();
    for (std::size_t i = (depth == 0 ? std::max(lo, first_lo) : lo); i < hi;
         ++i) {
      idx[depth] = static_cast<uint32_t>(i);
      partial[depth + 1] = partial[depth] + u.values[i];
      if (depth + 1 == size)
        fn(partial[depth + 1], idx);
      else
        self(self, depth + 1, i);
    }
  };
  rec(rec, 0, 0);
}

bool pair_free(const Representation& r) { return !r.has_negation_pair(); }

}  // namespace

std::optional<Term> term_under_caps(const Int& n, const GeneratorSet& g,
                                    const SearchCaps& caps) {
  if (n == 0) return std::nullopt;
  Int mag = abs(n);
  if (mag > caps.magnitude_cap) return std::nullopt;
  int sign = n < 0 ? -1 : 1;
  if (g.kind() == GenKind::Smooth) {
    Int rest = mag;
    for (uint64_t p : g.elements()) {
      unsigned e = remove_factor(&rest, p);
      if (e > caps.exponent_cap_for(p)) return std::nullopt;
    }
    if (rest != 1) return std::nullopt;
    Term t = Term::from_value(n);
    return t;
  }
  for (uint64_t b : g.elements()) {
    unsigned e = 0;
    if (is_power_of(mag, b, &e) && e <= caps.exponent_cap_for(b))
      return Term::power(sign, b, e);
  }
  return std::nullopt;
}

namespace {

std::optional<Representation> mitm_search(const Int& n, unsigned h,
                                          const SignedUniverse& u,
                                          unsigned threads) {
  unsigned j = h / 2, k = h - j;
  if (multiset_count(u.values.size(), j) > Int(kTableGuard))
    fail(Errc::universe_too_large, "meet-in-the-middle table too large");
  if (multiset_count(u.values.size(), k) > Int(kScanGuard))
    fail(Errc::universe_too_large, "meet-in-the-middle scan too large");

  // Table over the smaller half; one lex-best witness per value.
  std::unordered_map<Int, Multiset, IntHash> table;
  for_each_multiset(u, j, 0, u.values.size(),
                    [&](const Int& sum, const Multiset& ms) {
                      auto [it, fresh] = table.emplace(sum, ms);
                      if (!fresh) {
                        Representation a = to_rep(u, sum, ms, {});
                        Representation b = to_rep(u, sum, it->second, {});
                        if (Representation::lex_less(a, b)) it->second = ms;
                      }
                    });

  unsigned workers = std::max(1u, threads);
  std::vector<std::optional<Representation>> best(workers);
  std::size_t span = u.values.size();
  auto work = [&](unsigned w) {
    std::size_t lo = span * w / workers, hi = span * (w + 1) / workers;
    for_each_multiset(u, k, lo, hi, [&](const Int& sum, const Multiset& ms) {
      auto it = table.find(n - sum);
      if (it == table.end()) return;
      Representation r = to_rep(u, n, it->second, ms);
      if (!pair_free(r)) return;
      if (!best[w] || Representation::lex_less(r, *best[w])) best[w] = r;
    });
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::optional<Representation> out;
  for (auto& b : best) {
    if (b && (!out || Representation::lex_less(*b, *out))) out = b;
  }
  return out;
}

}  // namespace

std::optional<Representation> is_representable(const Int& n, unsigned h,
                                               const GeneratorSet& g,
                                               const SearchCaps& caps,
                                               unsigned threads) {
  caps.validate();
  if (h == 0) {
    if (n == 0) return Representation{n, {}};
    return std::nullopt;
  }
  if (h == 1) {
    if (auto t = term_under_caps(n, g, caps))
      return Representation{n, {*t}};
    return std::nullopt;
  }
  SignedUniverse u(term_universe(g, caps));
  return mitm_search(n, h, u, threads);
}

UpperSearch length_upper(const Int& n, unsigned h_max, const GeneratorSet& g,
                         const SearchCaps& caps, unsigned threads,
                         unsigned h_min) {
  caps.validate();
  UpperSearch out;
  out.effective = caps;
  if (n == 0) {
    if (h_min == 0) {
      out.h = 0;
      out.witness = Representation{n, {}};
    }
    return out;
  }
  if (h_max == 0) return out;
  if (h_min <= 1) {
    if (auto t = term_under_caps(n, g, caps)) {
      out.h = 1;
      out.witness = Representation{n, {*t}};
      return out;
    }
  }
  if (h_max == 1) return out;

  std::vector<Term> full = term_universe(g, caps);
  for (unsigned h = std::max(2u, h_min); h <= h_max; ++h) {
    unsigned j = h / 2, k = h - j;
    // Longest usable prefix of the capped universe at this h.
    std::size_t usable = full.size();
    while (usable > 0 &&
           (multiset_count(usable * 2, j) > Int(kTableGuard) ||
            multiset_count(usable * 2, k) > Int(kScanGuard)))
      usable = usable * 3 / 4;
    if (usable == 0) fail(Errc::universe_too_large, "caps too large for h=2");

    // Escalating prefixes: cheap small-term search first, the full usable
    // prefix last so the non-existence side is as strong as the guards allow.
    Int start = std::max<Int>(Int(1024), 8 * abs(n));
    std::vector<std::size_t> steps;
    for (Int m = start;; m *= 64) {
      std::size_t cut =
          std::upper_bound(full.begin(), full.begin() + usable, m,
                           [](const Int& v, const Term& t) {
                             return v < t.magnitude;
                           }) -
          full.begin();
      if (!steps.empty() && cut <= steps.back()) cut = usable;
      steps.push_back(cut);
      if (cut >= usable) break;
    }
    for (std::size_t cut : steps) {
      SignedUniverse u(
          std::vector<Term>(full.begin(), full.begin() + cut));
      if (auto rep = mitm_search(n, h, u, threads)) {
        out.h = h;
        out.witness = rep;
        return out;
      }
    }
    if (usable < full.size()) {
      out.complete = false;
      Int eff = full[usable - 1].magnitude;
      if (eff < out.effective.magnitude_cap) out.effective.magnitude_cap = eff;
    }
  }
  return out;
}

}  // namespace adlab
