#include "ball.hpp"

#include <algorithm>
#include <thread>

#include "mitm.hpp"
#include "universe.hpp"

namespace adlab {

namespace {

constexpr int64_t kSpanLimit = int64_t(1) << 28;

// dst |= src shifted left by `shift` bits (word arrays of equal length).
void or_shifted(std::vector<uint64_t>* dst, const std::vector<uint64_t>& src,
                uint64_t shift) {
  std::size_t words = src.size();
  std::size_t wshift = shift >> 6;
  unsigned bshift = shift & 63;
  if (bshift == 0) {
    for (std::size_t i = words; i-- > wshift;)
      (*dst)[i] |= src[i - wshift];
    return;
  }
  for (std::size_t i = words; i-- > wshift;) {
    uint64_t v = src[i - wshift] << bshift;
    if (i > wshift) v |= src[i - wshift - 1] >> (64 - bshift);
    (*dst)[i] |= v;
  }
}

// dst |= src shifted right by `shift` bits.
void or_shifted_right(std::vector<uint64_t>* dst,
                      const std::vector<uint64_t>& src, uint64_t shift) {
  std::size_t words = src.size();
  std::size_t wshift = shift >> 6;
  unsigned bshift = shift & 63;
  for (std::size_t i = 0; i + wshift < words; ++i) {
    uint64_t v = src[i + wshift] >> bshift;
    if (bshift && i + wshift + 1 < words) v |= src[i + wshift + 1] << (64 - bshift);
    (*dst)[i] |= v;
  }
}

}  // namespace

std::optional<unsigned> BallResult::length_of(int64_t n) const {
  if (n < -window_ || n > window_)
    fail(Errc::invalid_argument, "n outside the ball window");
  for (unsigned l = 0; l <= radius_; ++l) {
    if (bit(l, n)) return l;
  }
  return std::nullopt;
}

Representation BallResult::witness_of(int64_t n, const GeneratorSet& g) const {
  auto len = length_of(n);
  if (!len) fail(Errc::invalid_argument, "n is not in the ball");
  Representation rep;
  rep.target = n;
  int64_t cur = n;
  SearchCaps term_caps;
  term_caps.magnitude_cap = term_bound_;
  for (unsigned l = *len; l > 0; --l) {
    bool stepped = false;
    for (int64_t t : terms_) {
      for (int64_t s : {t, -t}) {
        int64_t prev = cur - s;
        if (prev < -work_bound_ || prev > work_bound_) continue;
        if (!bit(l - 1, prev)) continue;
        Term term = term_under_caps(Int(s), g, term_caps)
                        .value_or(Term::from_value(Int(s)));
        rep.terms.push_back(term);
        cur = prev;
        stepped = true;
        break;
      }
      if (stepped) break;
    }
    if (!stepped) fail(Errc::internal, "ball back-pointer chase failed");
  }
  rep.canonicalize();
  return rep;
}

std::vector<int64_t> BallResult::sphere(unsigned h) const {
  if (h > radius_) fail(Errc::invalid_argument, "sphere radius exceeds ball");
  std::vector<int64_t> out;
  for (int64_t n = -window_; n <= window_; ++n) {
    if (bit(h, n) && (h == 0 || !bit(h - 1, n))) out.push_back(n);
  }
  return out;
}

BallResult ball(unsigned h, int64_t window, const GeneratorSet& g,
                const SearchCaps& caps, const BallOptions& options) {
  caps.validate();
  if (window < 1) fail(Errc::invalid_argument, "window must be >= 1");
  if (h > 12) fail(Errc::invalid_argument, "ball radius limited to 12");
  if (Int(window) > caps.magnitude_cap)
    fail(Errc::window_exceeds_caps, "window " + std::to_string(window) +
                                        " exceeds the magnitude cap");
  unsigned overshoot = std::max(2u, options.overshoot);

  // Admitted terms: capped by both the caps and the window-scaled bound.
  Int term_bound_int = Int(window) * overshoot;
  if (term_bound_int > caps.magnitude_cap) term_bound_int = caps.magnitude_cap;
  SearchCaps eff = caps;
  eff.magnitude_cap = term_bound_int;
  std::vector<Term> universe = term_universe(g, eff);
  int64_t term_bound = universe.back().magnitude.convert_to<int64_t>();

  // No path of <= h admitted terms can leave [-work, work].
  int64_t work = std::max<int64_t>(
      int64_t(overshoot) * (window + term_bound),
      int64_t(h) * std::max<int64_t>(term_bound, 1));
  if (work > kSpanLimit)
    fail(Errc::invalid_argument,
         "ball working span exceeds 2^28; shrink the window or caps");

  BallResult res;
  res.radius_ = h;
  res.window_ = window;
  res.term_bound_ = term_bound;
  res.work_bound_ = work;
  for (const Term& t : universe)
    res.terms_.push_back(t.magnitude.convert_to<int64_t>());

  std::size_t bits = static_cast<std::size_t>(2 * work + 1);
  std::size_t words = (bits + 63) / 64;
  res.layers_.assign(h + 1, std::vector<uint64_t>(words, 0));
  res.layers_[0][static_cast<uint64_t>(work) >> 6] |=
      uint64_t(1) << (static_cast<uint64_t>(work) & 63);

  unsigned workers = std::max(1u, options.threads);
  for (unsigned l = 1; l <= h; ++l) {
    const auto& prev = res.layers_[l - 1];
    auto& cur = res.layers_[l];
    cur = prev;
    if (workers == 1 || res.terms_.size() < 8) {
      for (int64_t t : res.terms_) {
        or_shifted(&cur, prev, static_cast<uint64_t>(t));
        or_shifted_right(&cur, prev, static_cast<uint64_t>(t));
      }
    } else {
      std::vector<std::vector<uint64_t>> partial(
          workers, std::vector<uint64_t>(words, 0));
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          std::size_t lo = res.terms_.size() * w / workers;
          std::size_t hi = res.terms_.size() * (w + 1) / workers;
          for (std::size_t i = lo; i < hi; ++i) {
            or_shifted(&partial[w], prev, static_cast<uint64_t>(res.terms_[i]));
            or_shifted_right(&partial[w], prev,
                             static_cast<uint64_t>(res.terms_[i]));
          }
        });
      }
      for (auto& th : pool) th.join();
      for (unsigned w = 0; w < workers; ++w) {
        for (std::size_t i = 0; i < words; ++i) cur[i] |= partial[w][i];
      }
    }
    // Mask bits outside the working span so shifted-in garbage never lands.
    std::size_t tail = bits & 63;
    if (tail) cur[words - 1] &= (uint64_t(1) << tail) - 1;
  }
  return res;
}

}  // namespace adlab
