#include "sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hashing.hpp"
#include "primality.hpp"

namespace adlab {

nlohmann::json DeltaReport::to_json() const {
  std::vector<std::string> ps;
  for (uint64_t p : primes) ps.push_back(std::to_string(p));
  return {{"n", std::to_string(n)}, {"primes", ps}, {"delta", delta()}};
}

DeltaReport delta(uint64_t n) {
  if (n == 0) fail(Errc::invalid_argument, "delta needs n >= 1");
  if (n >= (uint64_t(1) << 63))
    fail(Errc::invalid_argument, "delta is supported for n < 2^63");
  DeltaReport r;
  r.n = n;
  for (uint64_t d : divisors_u64(n)) {
    if (is_prime_u64(d + 1)) r.primes.push_back(d + 1);
  }
  return r;
}

namespace {

// dst |= src[src_begin .. src_begin+count) written at dst_begin (bit blit).
void or_bit_blit(std::vector<uint64_t>* dst, const std::vector<uint64_t>& src,
                 uint64_t src_begin, uint64_t dst_begin, uint64_t count) {
  for (uint64_t done = 0; done < count;) {
    uint64_t s = src_begin + done, d = dst_begin + done;
    unsigned sbit = static_cast<unsigned>(s & 63);
    unsigned dbit = static_cast<unsigned>(d & 63);
    uint64_t chunk = std::min<uint64_t>(
        {64 - sbit, 64 - dbit, count - done});
    uint64_t mask = chunk == 64 ? ~uint64_t(0) : ((uint64_t(1) << chunk) - 1);
    uint64_t bits = (src[s >> 6] >> sbit) & mask;
    (*dst)[d >> 6] |= bits << dbit;
    done += chunk;
  }
}

// dst |= src rotated left by s within an m-bit circle.
void or_rotated(std::vector<uint64_t>* dst, const std::vector<uint64_t>& src,
                uint64_t s, uint64_t m) {
  s %= m;
  if (s == 0) {
    for (std::size_t i = 0; i < src.size(); ++i) (*dst)[i] |= src[i];
    return;
  }
  or_bit_blit(dst, src, 0, s, m - s);
  or_bit_blit(dst, src, m - s, 0, s);
}

uint64_t popcount_words(const std::vector<uint64_t>& words) {
  uint64_t c = 0;
  for (uint64_t w : words) c += static_cast<uint64_t>(__builtin_popcountll(w));
  return c;
}

}  // namespace

std::vector<uint64_t> signed_ball_mod(const std::vector<uint64_t>& S,
                                      unsigned h, uint64_t m) {
  if (m < 1 || m > (uint64_t(1) << 30))
    fail(Errc::invalid_argument, "modulus out of range");
  std::size_t words = static_cast<std::size_t>((m + 63) / 64);
  std::vector<uint64_t> cur(words, 0);
  cur[0] |= 1;  // residue 0
  for (unsigned round = 0; round < h; ++round) {
    std::vector<uint64_t> next = cur;
    for (uint64_t s : S) {
      uint64_t r = s % m;
      or_rotated(&next, cur, r, m);
      or_rotated(&next, cur, (m - r) % m, m);
    }
    if (next == cur) break;  // stabilized; later radii are equal
    cur = std::move(next);
    if (popcount_words(cur) == m) break;  // coverage persists
  }
  std::vector<uint64_t> out;
  for (uint64_t r = 0; r < m; ++r) {
    if ((cur[r >> 6] >> (r & 63)) & 1u) out.push_back(r);
  }
  return out;
}

Int coverage_bound(uint64_t closure_size, unsigned h) {
  if (closure_size < 1) fail(Errc::invalid_argument, "empty closure");
  return ipow(Int(2 * closure_size + 1), h);
}

nlohmann::json ObstructionCertificate::to_json() const {
  auto dec_list = [](const std::vector<uint64_t>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (uint64_t x : xs) out.push_back(std::to_string(x));
    return out;
  };
  nlohmann::json j;
  j["generator_set"] = genset.to_json();
  j["n"] = std::to_string(n);
  j["q_list"] = dec_list(q_list);
  j["modulus"] = std::to_string(modulus);
  j["h"] = h;
  j["closure"] = dec_list(closure);
  j["ball_count"] = ball_count;
  j["missing_count"] = missing_count;
  j["ball_digest"] = ball_digest;
  j["full_lists"] = full_lists;
  if (full_lists) {
    j["ball"] = dec_list(ball);
    j["missing"] = dec_list(missing);
  } else {
    j["missing_sample"] = dec_list(missing);
  }
  return j;
}

ObstructionCertificate ObstructionCertificate::from_json(
    const nlohmann::json& j) {
  auto u64_list = [](const nlohmann::json& arr) {
    std::vector<uint64_t> out;
    for (const auto& e : arr)
      out.push_back(parse_int(e.get<std::string>()).convert_to<uint64_t>());
    return out;
  };
  ObstructionCertificate c{GeneratorSet::from_json(j.at("generator_set"))};
  c.n = parse_int(j.at("n").get<std::string>()).convert_to<uint64_t>();
  c.q_list = u64_list(j.at("q_list"));
  c.modulus = parse_int(j.at("modulus").get<std::string>()).convert_to<uint64_t>();
  c.h = j.at("h").get<unsigned>();
  c.closure = u64_list(j.at("closure"));
  c.ball_count = j.at("ball_count").get<uint64_t>();
  c.missing_count = j.at("missing_count").get<uint64_t>();
  c.ball_digest = j.at("ball_digest").get<std::string>();
  c.full_lists = j.at("full_lists").get<bool>();
  if (c.full_lists) {
    c.ball = u64_list(j.at("ball"));
    c.missing = u64_list(j.at("missing"));
  } else {
    c.missing = u64_list(j.at("missing_sample"));
  }
  return c;
}

void recheck_certificate(const ObstructionCertificate& cert) {
  auto bad = [](const std::string& why) {
    fail(Errc::verification_failed, "certificate recheck: " + why);
  };
  if (cert.h > 64) bad("unreasonable radius");
  if (cert.q_list.empty()) bad("empty q list");
  uint64_t q_prod = 1;
  const auto& support = cert.genset.prime_support();
  for (std::size_t i = 0; i < cert.q_list.size(); ++i) {
    uint64_t q = cert.q_list[i];
    if (i && cert.q_list[i - 1] >= q) bad("q list not strictly increasing");
    if (!is_prime_u64(q)) bad("q not prime: " + std::to_string(q));
    if (std::find(support.begin(), support.end(), q) != support.end())
      bad("q lies in the generator support");
    if (cert.n % (q - 1) != 0) bad("(q-1) does not divide n");
    if (q_prod > cert.modulus / q) bad("q product overflow");
    q_prod *= q;
  }
  if (q_prod != cert.modulus) bad("modulus is not the product of q_list");
  std::vector<uint64_t> closure = cert.genset.residue_closure(cert.modulus);
  if (closure != cert.closure) bad("closure mismatch");
  // Spot-check the root congruence a^n = 1 (mod Q) on the generators.
  for (uint64_t a : cert.genset.elements()) {
    if (powmod_u64(a % cert.modulus, cert.n, cert.modulus) != 1 % cert.modulus)
      bad("generator^n != 1 mod Q");
  }
  std::vector<uint64_t> ball = signed_ball_mod(closure, cert.h, cert.modulus);
  if (ball.size() != cert.ball_count) bad("ball count mismatch");
  if (residue_digest(ball) != cert.ball_digest) bad("ball digest mismatch");
  if (cert.ball_count + cert.missing_count != cert.modulus)
    bad("ball + missing must partition Z/Q");
  if (cert.missing_count == 0) bad("missing set is empty");
  if (cert.full_lists) {
    if (ball != cert.ball) bad("ball list mismatch");
    std::vector<uint64_t> missing;
    std::size_t bi = 0;
    for (uint64_t r = 0; r < cert.modulus; ++r) {
      if (bi < ball.size() && ball[bi] == r)
        ++bi;
      else
        missing.push_back(r);
    }
    if (missing != cert.missing) bad("missing list mismatch");
  } else {
    std::set<uint64_t> ball_set(ball.begin(), ball.end());
    for (uint64_t r : cert.missing) {
      if (r >= cert.modulus) bad("missing sample out of range");
      if (ball_set.count(r)) bad("missing sample intersects the ball");
    }
  }
}

ObstructionCertificate build_certificate(const GeneratorSet& g, uint64_t n,
                                         unsigned h,
                                         const std::vector<uint64_t>& q_list) {
  ObstructionCertificate cert{g};
  cert.n = n;
  cert.h = h;
  cert.q_list = q_list;
  std::sort(cert.q_list.begin(), cert.q_list.end());
  uint64_t Q = 1;
  for (uint64_t q : cert.q_list) {
    if (Q > (uint64_t(1) << 30) / q)
      fail(Errc::invalid_argument, "modulus exceeds the 2^30 limit");
    Q *= q;
  }
  cert.modulus = Q;
  cert.closure = g.residue_closure(Q);
  std::vector<uint64_t> ball = signed_ball_mod(cert.closure, h, Q);
  cert.ball_count = ball.size();
  cert.missing_count = Q - ball.size();
  cert.ball_digest = residue_digest(ball);
  cert.full_lists = cert.missing_count <= ObstructionCertificate::kFullListCap &&
                    cert.ball_count <= ObstructionCertificate::kFullListCap;
  uint64_t keep = cert.full_lists ? Q : 64;
  std::vector<uint64_t> missing;
  std::size_t bi = 0;
  for (uint64_t r = 0; r < Q && missing.size() < keep; ++r) {
    if (bi < ball.size() && ball[bi] == r)
      ++bi;
    else
      missing.push_back(r);
  }
  cert.missing = std::move(missing);
  if (cert.full_lists) cert.ball = std::move(ball);
  recheck_certificate(cert);
  return cert;
}

std::vector<uint64_t> obstruction_candidates(uint64_t max_n) {
  std::set<uint64_t> cand;
  // lcm(1..t)
  uint64_t l = 1;
  for (uint64_t t = 2; ; ++t) {
    uint64_t g = std::gcd(l, t);
    if (l / g > max_n / t) break;
    l = l / g * t;
    cand.insert(l);
    if (t > 64) break;
  }
  // primorials and their pairwise products
  std::vector<uint64_t> primorials;
  uint64_t pr = 1;
  for (uint32_t p : primes_up_to(101)) {
    if (pr > max_n / p) break;
    pr *= p;
    primorials.push_back(pr);
    cand.insert(pr);
  }
  for (uint64_t a : primorials) {
    for (uint64_t b : primorials) {
      if (a > max_n / b) break;
      cand.insert(a * b);
    }
  }
  cand.insert(2);
  std::vector<uint64_t> out(cand.begin(), cand.end());
  std::erase_if(out, [&](uint64_t v) { return v < 2 || v > max_n; });
  std::stable_sort(out.begin(), out.end(), [](uint64_t a, uint64_t b) {
    double sa = static_cast<double>(delta(a).delta()) / std::log(double(a));
    double sb = static_cast<double>(delta(b).delta()) / std::log(double(b));
    if (sa != sb) return sa > sb;
    return a < b;
  });
  return out;
}

std::optional<ObstructionCertificate> find_obstruction(
    const GeneratorSet& g, unsigned h, const ObstructionBudget& budget,
    ObstructionDiagnostics* diag, const std::optional<Int>& target) {
  ObstructionDiagnostics local;
  ObstructionDiagnostics& d = diag ? *diag : local;
  uint64_t max_modulus = std::min(budget.max_modulus, uint64_t(1) << 30);
  const auto& support = g.prime_support();

  for (uint64_t n : obstruction_candidates(budget.max_n)) {
    ++d.candidates_tried;
    std::vector<uint64_t> qs;
    for (uint64_t q : delta(n).primes) {
      if (std::find(support.begin(), support.end(), q) == support.end())
        qs.push_back(q);
    }
    uint64_t Q = 1;
    std::vector<uint64_t> used;
    for (uint64_t q : qs) {
      if (used.size() >= budget.max_q_count) break;
      if (Q > max_modulus / q) break;
      Q *= q;
      used.push_back(q);
      if (Q < 3) continue;
      std::vector<uint64_t> closure = g.residue_closure(Q);
      // Keep the sumset workspace bounded.
      if (closure.size() > 200'000 ||
          Int(closure.size()) * h * Q > Int(4'000'000'000ull))
        break;
      d.largest_modulus = std::max(d.largest_modulus, Q);
      std::vector<uint64_t> ball = signed_ball_mod(closure, h, Q);
      double ratio = static_cast<double>(ball.size()) / static_cast<double>(Q);
      d.best_coverage_ratio = std::min(d.best_coverage_ratio, ratio);
      if (ball.size() == Q) continue;  // covered: extend with the next q
      if (target) {
        uint64_t r = static_cast<uint64_t>(
            ((*target % Q) + Q).convert_to<uint64_t>() % Q);
        if (std::binary_search(ball.begin(), ball.end(), r)) continue;
      }
      ObstructionCertificate cert = build_certificate(g, n, h, used);
      return cert;
    }
  }
  return std::nullopt;
}

std::optional<unsigned> certify_lower(const Int& n,
                                      const ObstructionCertificate& cert) {
  recheck_certificate(cert);
  uint64_t Q = cert.modulus;
  uint64_t r = static_cast<uint64_t>(((n % Q) + Q).convert_to<uint64_t>() % Q);
  bool missing;
  if (cert.full_lists) {
    missing = std::binary_search(cert.missing.begin(), cert.missing.end(), r);
  } else {
    std::vector<uint64_t> ball = signed_ball_mod(cert.closure, cert.h, Q);
    missing = !std::binary_search(ball.begin(), ball.end(), r);
  }
  if (!missing) return std::nullopt;
  return cert.h + 1;
}

}  // namespace adlab
