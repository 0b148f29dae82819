#include "certio.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <numeric>
#include <set>

#include "hashing.hpp"
#include "mitm.hpp"
#include "pair_decide.hpp"
#include "primality.hpp"
#include "version.hpp"

namespace adlab {

const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::UpperWitness: return "UPPER_WITNESS";
    case CertKind::LowerModular: return "LOWER_MODULAR";
    case CertKind::LowerExhaustive: return "LOWER_EXHAUSTIVE";
    case CertKind::LambdaBundle: return "LAMBDA_BUNDLE";
  }
  return "UPPER_WITNESS";
}

CertKind cert_kind_from_name(const std::string& s) {
  if (s == "UPPER_WITNESS") return CertKind::UpperWitness;
  if (s == "LOWER_MODULAR") return CertKind::LowerModular;
  if (s == "LOWER_EXHAUSTIVE") return CertKind::LowerExhaustive;
  if (s == "LAMBDA_BUNDLE") return CertKind::LambdaBundle;
  fail(Errc::schema_mismatch, "unknown certificate kind " + s);
}

nlohmann::json CertificateFile::to_json() const {
  return {{"schema_version", schema_version},
          {"kind", cert_kind_name(kind)},
          {"created", created},
          {"tool_version", tool_version},
          {"payload", payload}};
}

CertificateFile CertificateFile::from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(Errc::parse_error, "certificate must be an object");
  CertificateFile c;
  if (!j.contains("schema_version"))
    fail(Errc::schema_mismatch, "missing schema_version");
  c.schema_version = j.at("schema_version").get<std::string>();
  if (c.schema_version != kSchemaVersion)
    fail(Errc::schema_mismatch,
         "unsupported schema_version " + c.schema_version);
  c.kind = cert_kind_from_name(j.at("kind").get<std::string>());
  c.created = j.value("created", "");
  c.tool_version = j.value("tool_version", "");
  if (!j.contains("payload")) fail(Errc::schema_mismatch, "missing payload");
  c.payload = j.at("payload");
  return c;
}

std::string canonical_payload(const nlohmann::json& payload) {
  return payload.dump();  // nlohmann::json orders keys; ints stay integral
}

std::string certificate_id(const nlohmann::json& payload) {
  return fnv1a64_hex(canonical_payload(payload));
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"valid", valid}, {"checks", cs}};
}

namespace {

std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CertificateFile fresh(CertKind kind, nlohmann::json payload) {
  CertificateFile c;
  c.schema_version = kSchemaVersion;
  c.kind = kind;
  c.created = now_iso8601();
  c.tool_version = kToolVersion;
  c.payload = std::move(payload);
  return c;
}

// ---- verifier-local recomputation routines ----
// These deliberately repeat logic that exists elsewhere: the verifier must
// agree with the producers without sharing their code paths.

bool v_member(const nlohmann::json& gj, const Int& value) {
  if (value < 1) return false;
  std::string kind = gj.at("kind").get<std::string>();
  if (kind == "SMOOTH") {
    Int rest = value;
    for (const auto& pj : gj.at("primes")) {
      Int p = parse_int(pj.get<std::string>());
      if (p < 2) return false;
      while (rest % p == 0) rest /= p;
    }
    return rest == 1;
  }
  if (kind == "POWER_UNION") {
    for (const auto& bj : gj.at("bases")) {
      Int b = parse_int(bj.get<std::string>());
      if (b < 2) return false;
      Int v = 1;
      while (v < value) v *= b;
      if (v == value) return true;
    }
    return false;
  }
  return false;
}

std::vector<uint64_t> v_support(const nlohmann::json& gj) {
  std::set<uint64_t> s;
  std::string kind = gj.at("kind").get<std::string>();
  const char* key = kind == "SMOOTH" ? "primes" : "bases";
  for (const auto& ej : gj.at(key)) {
    uint64_t e = parse_int(ej.get<std::string>()).convert_to<uint64_t>();
    for (auto [p, mult] : factor_u64(e)) s.insert(p);
  }
  return {s.begin(), s.end()};
}

std::vector<uint64_t> v_generators(const nlohmann::json& gj) {
  std::vector<uint64_t> out;
  std::string kind = gj.at("kind").get<std::string>();
  const char* key = kind == "SMOOTH" ? "primes" : "bases";
  for (const auto& ej : gj.at(key))
    out.push_back(parse_int(ej.get<std::string>()).convert_to<uint64_t>());
  return out;
}

// Straightforward fixpoint / orbit recomputation of the residue set.
std::vector<uint64_t> v_closure(const nlohmann::json& gj, uint64_t m) {
  std::vector<uint64_t> gens = v_generators(gj);
  std::string kind = gj.at("kind").get<std::string>();
  std::set<uint64_t> seen;
  if (kind == "SMOOTH") {
    std::vector<uint64_t> work{1 % m};
    seen.insert(1 % m);
    while (!work.empty()) {
      uint64_t r = work.back();
      work.pop_back();
      for (uint64_t g : gens) {
        uint64_t s = mulmod_u64(r, g % m, m);
        if (seen.insert(s).second) work.push_back(s);
      }
    }
  } else {
    seen.insert(1 % m);
    for (uint64_t g : gens) {
      uint64_t r = g % m;
      while (seen.insert(r).second) r = mulmod_u64(r, g % m, m);
    }
  }
  return {seen.begin(), seen.end()};
}

// Byte-array signed sumset ball, independent of the producer's bit blits.
std::vector<uint64_t> v_ball(const std::vector<uint64_t>& S, unsigned h,
                             uint64_t m) {
  std::vector<uint8_t> cur(m, 0);
  cur[0] = 1;
  for (unsigned round = 0; round < h; ++round) {
    std::vector<uint8_t> next = cur;
    for (uint64_t s : S) {
      uint64_t r = s % m;
      for (uint64_t x = 0; x < m; ++x) {
        if (!cur[x]) continue;
        next[(x + r) % m] = 1;
        next[(x + m - r) % m] = 1;
      }
    }
    cur = std::move(next);
  }
  std::vector<uint64_t> out;
  for (uint64_t r = 0; r < m; ++r)
    if (cur[r]) out.push_back(r);
  return out;
}

struct Checker {
  Verdict verdict;
  bool ok = true;

  void check(const std::string& name, bool pass, const std::string& detail) {
    verdict.checks.push_back({name, pass, pass ? "" : detail});
    if (!pass) ok = false;
  }

  Verdict finish() {
    verdict.valid = ok;
    return verdict;
  }
};

void verify_witness_payload(Checker& c, const nlohmann::json& p) {
  if (!p.contains("generator_set") || !p.contains("representation")) {
    c.check("shape", false, "missing generator_set or representation");
    return;
  }
  const auto& gj = p.at("generator_set");
  const auto& rj = p.at("representation");
  Int target = parse_int(rj.at("target").get<std::string>());
  Int sum = 0;
  bool members = true, powers = true, signs = true;
  std::string why;
  std::vector<Int> values;
  for (const auto& tj : rj.at("terms")) {
    int sign = tj.at("sign").get<int>();
    if (sign != 1 && sign != -1) signs = false;
    Int v = parse_int(tj.at("value").get<std::string>());
    if (v < 1) {
      members = false;
      why = "term value < 1";
    } else if (!v_member(gj, v)) {
      members = false;
      why = "term " + to_dec(v) + " is not a generator";
    }
    if (tj.contains("base")) {
      Int b = parse_int(tj.at("base").get<std::string>());
      unsigned e = tj.at("exponent").get<unsigned>();
      if (ipow(b, e) != v) powers = false;
    }
    values.push_back(sign < 0 ? Int(-v) : v);
    sum += values.back();
  }
  c.check("term_signs", signs, "sign must be +1 or -1");
  c.check("term_membership", members, why);
  c.check("term_powers", powers, "base^exponent disagrees with value");
  c.check("sum", sum == target,
          "sum mismatch: terms total " + to_dec(sum) + " != " + to_dec(target));
  unsigned claimed = rj.at("length").get<unsigned>();
  c.check("length", claimed == values.size(),
          "claimed length disagrees with term count");
  bool pairfree = true;
  for (std::size_t i = 0; i < values.size() && pairfree; ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == -values[j]) {
        pairfree = false;
        break;
      }
  c.check("no_cancelling_pair", pairfree,
          "witness contains a +a/-a pair and cannot be minimal");
}

void verify_modular_payload(Checker& c, const nlohmann::json& p) {
  if (!p.contains("certificate")) {
    c.check("shape", false, "missing certificate");
    return;
  }
  const auto& cj = p.at("certificate");
  const auto& gj = cj.at("generator_set");
  uint64_t n = parse_int(cj.at("n").get<std::string>()).convert_to<uint64_t>();
  uint64_t Q =
      parse_int(cj.at("modulus").get<std::string>()).convert_to<uint64_t>();
  unsigned h = cj.at("h").get<unsigned>();
  std::vector<uint64_t> support = v_support(gj);

  bool q_ok = true;
  std::string q_why;
  uint64_t prod = 1;
  uint64_t prev = 0;
  for (const auto& qj : cj.at("q_list")) {
    uint64_t q = parse_int(qj.get<std::string>()).convert_to<uint64_t>();
    if (q <= prev) {
      q_ok = false;
      q_why = "q_list not strictly increasing";
    }
    prev = q;
    if (!is_prime_u64(q)) {
      q_ok = false;
      q_why = std::to_string(q) + " is not prime";
    }
    if (std::find(support.begin(), support.end(), q) != support.end()) {
      q_ok = false;
      q_why = std::to_string(q) + " lies in the generator support";
    }
    if (n % (q - 1) != 0) {
      q_ok = false;
      q_why = "(q-1) does not divide n for q=" + std::to_string(q);
    }
    if (prod > Q / q) {
      q_ok = false;
      q_why = "q product overflows modulus";
      break;
    }
    prod *= q;
  }
  c.check("q_list", q_ok, q_why);
  c.check("modulus_product", prod == Q, "modulus is not the product of q_list");
  if (!c.ok) return;

  bool root = true;
  for (uint64_t g : v_generators(gj)) {
    if (powmod_u64(g % Q, n, Q) != 1 % Q) root = false;
  }
  c.check("generator_congruence", root, "a^n != 1 (mod Q) for a generator");

  std::vector<uint64_t> closure = v_closure(gj, Q);
  std::vector<uint64_t> claimed_closure;
  for (const auto& rj : cj.at("closure"))
    claimed_closure.push_back(
        parse_int(rj.get<std::string>()).convert_to<uint64_t>());
  c.check("closure", closure == claimed_closure,
          "residue closure recomputation disagrees");

  if (Int(closure.size()) * h * Q > Int(8'000'000'000ull)) {
    c.check("ball_recompute", false, "certificate too large to re-verify");
    return;
  }
  std::vector<uint64_t> ball = v_ball(closure, h, Q);
  c.check("ball_count", ball.size() == cj.at("ball_count").get<uint64_t>(),
          "ball size recomputation disagrees");
  c.check("ball_digest",
          residue_digest(ball) == cj.at("ball_digest").get<std::string>(),
          "ball digest recomputation disagrees");
  uint64_t missing_count = cj.at("missing_count").get<uint64_t>();
  c.check("partition", ball.size() + missing_count == Q,
          "ball and missing must partition Z/Q");
  c.check("missing_nonempty", missing_count > 0, "missing set is empty");

  std::set<uint64_t> ball_set(ball.begin(), ball.end());
  bool lists_ok = true;
  std::string lists_why;
  if (cj.at("full_lists").get<bool>()) {
    std::vector<uint64_t> claimed_ball;
    for (const auto& rj : cj.at("ball"))
      claimed_ball.push_back(
          parse_int(rj.get<std::string>()).convert_to<uint64_t>());
    if (claimed_ball != ball) {
      lists_ok = false;
      lists_why = "ball list disagrees with recomputation";
    }
    std::size_t mi = 0;
    for (const auto& rj : cj.at("missing")) {
      uint64_t r = parse_int(rj.get<std::string>()).convert_to<uint64_t>();
      if (ball_set.count(r)) {
        lists_ok = false;
        lists_why = "missing residue " + std::to_string(r) + " is in ball_mod";
      }
      ++mi;
    }
    if (mi != missing_count) {
      lists_ok = false;
      lists_why = "missing list length disagrees with missing_count";
    }
  } else {
    for (const auto& rj : cj.at("missing_sample")) {
      uint64_t r = parse_int(rj.get<std::string>()).convert_to<uint64_t>();
      if (ball_set.count(r)) {
        lists_ok = false;
        lists_why = "missing residue " + std::to_string(r) + " is in ball_mod";
      }
    }
  }
  c.check("missing_lists", lists_ok, lists_why);

  if (p.contains("targets")) {
    bool targets_ok = true;
    std::string twhy;
    for (const auto& tj : p.at("targets")) {
      Int t = parse_int(tj.get<std::string>());
      uint64_t r =
          static_cast<uint64_t>(((t % Q) + Q).convert_to<uint64_t>() % Q);
      if (ball_set.count(r)) {
        targets_ok = false;
        twhy = "target " + to_dec(t) + " is not in a missing class";
      }
    }
    c.check("targets_missing", targets_ok, twhy);
  }
}

void verify_exhaustive_payload(Checker& c, const nlohmann::json& p) {
  bool shape = p.contains("generator_set") && p.contains("n") &&
               p.contains("excluded_h") && p.contains("caps") &&
               p.contains("status");
  c.check("shape", shape, "missing field");
  if (!shape) return;
  c.check("conditional_marking",
          p.at("status").get<std::string>() == "CAP_CONDITIONAL",
          "exhaustive records must be marked CAP_CONDITIONAL");
  Int n = parse_int(p.at("n").get<std::string>());
  c.check("n_nonzero", n != 0, "n must be nonzero");
  unsigned h = p.at("excluded_h").get<unsigned>();
  c.check("h_positive", h >= 1, "excluded_h must be >= 1");
  SearchCaps caps;
  bool caps_ok = true;
  try {
    caps = SearchCaps::from_json(p.at("caps"));
  } catch (const Error&) {
    caps_ok = false;
  }
  c.check("caps_well_formed", caps_ok, "caps record is malformed");
  if (!c.ok) return;

  // Re-run the bounded scan when it is cheap enough to repeat.
  GeneratorSet g = GeneratorSet::from_json(p.at("generator_set"));
  if (h <= 2) {
    try {
      bool found = false;
      for (unsigned hh = 1; hh <= h && !found; ++hh)
        found = is_representable(n, hh, g, caps).has_value();
      c.check("scan_replay", !found,
              "a representation exists within the declared caps");
    } catch (const Error& e) {
      c.check("scan_replay", false,
              std::string("scan replay failed: ") + e.what());
    }
  }
}

// Re-derive the two-term exclusion obligations for n over g and match them
// against the recorded branches.
void verify_two_term_exclusion(Checker& c, const nlohmann::json& gj,
                               const Int& n, const nlohmann::json& detail) {
  Int M = abs(n);
  std::string kind = gj.at("kind").get<std::string>();
  if (!detail.contains("branches")) {
    c.check("two_term_shape", false, "missing exclusion branches");
    return;
  }
  const auto& branches = detail.at("branches");

  auto find_eq_branch = [&](const std::string& divisor, uint64_t p, uint64_t q,
                            int sp, int sq,
                            const Int& cval) -> const nlohmann::json* {
    for (const auto& b : branches) {
      if (b.value("kind", "") != "pair_equation") continue;
      if (b.contains("divisor") != !divisor.empty()) continue;
      if (!divisor.empty() && b.at("divisor").get<std::string>() != divisor)
        continue;
      if (parse_int(b.at("p").get<std::string>()) != Int(p)) continue;
      if (parse_int(b.at("q").get<std::string>()) != Int(q)) continue;
      if (b.at("sp").get<int>() != sp || b.at("sq").get<int>() != sq) continue;
      if (parse_int(b.at("c").get<std::string>()) != cval) continue;
      return &b;
    }
    return nullptr;
  };

  auto recheck_eq = [&](const nlohmann::json& b) {
    PairEquation eq;
    eq.p = parse_int(b.at("p").get<std::string>()).convert_to<uint64_t>();
    eq.q = parse_int(b.at("q").get<std::string>()).convert_to<uint64_t>();
    eq.sp = b.at("sp").get<int>();
    eq.sq = b.at("sq").get<int>();
    eq.c = parse_int(b.at("c").get<std::string>());
    eq.xlo = b.at("x_min").get<unsigned>();
    eq.ylo = b.at("y_min").get<unsigned>();
    std::vector<uint64_t> mods;
    for (const auto& mj : b.at("kill_moduli"))
      mods.push_back(parse_int(mj.get<std::string>()).convert_to<uint64_t>());
    return recheck_pair_exclusion(eq, b.at("scan_x_max").get<unsigned>(),
                                  b.at("scan_y_max").get<unsigned>(), mods);
  };

  if (kind == "SMOOTH") {
    std::vector<uint64_t> primes = v_generators(gj);
    if (primes.size() != 2) {
      c.check("two_term_support", false,
              "exact exclusion requires exactly two primes");
      return;
    }
    uint64_t p = primes[0], q = primes[1];
    if (M > 10'000'000) {
      c.check("two_term_size", false, "n too large to re-verify exhaustively");
      return;
    }
    // Sums: complete rescan below M.
    bool no_sum = true;
    for (Int a = 1; 2 * a <= M; ++a) {
      if (!v_member(gj, a)) continue;
      if (v_member(gj, M - a)) {
        no_sum = false;
        break;
      }
    }
    c.check("two_term_sum_rescan", no_sum, "a two-term sum exists");
    // Divisor branches.
    unsigned vp = 0, vq = 0;
    {
      Int rest = M;
      while (rest % p == 0) {
        rest /= p;
        ++vp;
      }
      while (rest % q == 0) {
        rest /= q;
        ++vq;
      }
    }
    bool branch_ok = true;
    std::string why;
    for (unsigned i = 0; i <= vp && branch_ok; ++i) {
      for (unsigned j = 0; j <= vq && branch_ok; ++j) {
        Int gdiv = ipow(Int(p), i) * ipow(Int(q), j);
        Int np = M / gdiv;
        if (v_member(gj, np + 1)) {
          branch_ok = false;
          why = "shifted member exists at divisor " + to_dec(gdiv);
          break;
        }
        for (int dir = 0; dir < 2; ++dir) {
          int sp = dir == 0 ? 1 : -1;
          const nlohmann::json* b =
              find_eq_branch(to_dec(gdiv), p, q, sp, -sp, np);
          if (!b || b->value("outcome", "") != "excluded" || !recheck_eq(*b)) {
            branch_ok = false;
            why = "pair equation not excluded at divisor " + to_dec(gdiv);
            break;
          }
        }
      }
    }
    c.check("two_term_branches", branch_ok, why);
    return;
  }

  // POWER_UNION
  std::vector<uint64_t> bases = v_generators(gj);
  bool local_ok = true;
  std::string why;
  for (uint64_t b : bases) {
    Int by = 1;
    for (unsigned y = 0; by <= M && local_ok; ++y, by *= b) {
      if (M % by != 0) continue;
      Int cof = M / by;
      unsigned k = 0;
      if (is_power_of(cof + 1, b, &k) && k >= 1) {
        local_ok = false;
        why = "same-base difference exists for base " + std::to_string(b);
      }
      if (cof >= 2 && is_power_of(cof - 1, b, &k)) {
        local_ok = false;
        why = "same-base sum exists for base " + std::to_string(b);
      }
    }
  }
  c.check("two_term_same_base", local_ok, why);
  bool cross_ok = true;
  std::string cwhy;
  for (std::size_t i = 0; i < bases.size() && cross_ok; ++i) {
    for (std::size_t j = i + 1; j < bases.size() && cross_ok; ++j) {
      uint64_t bi = bases[i], bj = bases[j];
      Int bjy = 1;
      for (unsigned y = 0; bjy <= M; ++y, bjy *= bj) {
        unsigned x = 0;
        if (M - bjy >= 1 && is_power_of(M - bjy, bi, &x)) {
          cross_ok = false;
          cwhy = "cross-base sum exists";
          break;
        }
      }
      for (int dir = 0; dir < 2 && cross_ok; ++dir) {
        int sp = dir == 0 ? 1 : -1;
        const nlohmann::json* b = find_eq_branch("", bi, bj, sp, -sp, M);
        if (!b || b->value("outcome", "") != "excluded" || !recheck_eq(*b)) {
          cross_ok = false;
          cwhy = "cross-base pair equation not excluded";
        }
      }
    }
  }
  c.check("two_term_cross_base", cross_ok, cwhy);
}

void verify_length_bound_row(Checker& c, const nlohmann::json& gj,
                             const nlohmann::json& row, unsigned h,
                             std::string tag) {
  Int n = parse_int(row.at("n").get<std::string>());
  unsigned lower = row.at("lower").get<unsigned>();
  std::optional<unsigned> upper;
  if (!row.at("upper").is_null()) upper = row.at("upper").get<unsigned>();
  if (upper && !row.at("witness").is_null()) {
    nlohmann::json wp = {{"generator_set", gj},
                         {"representation", row.at("witness")}};
    Checker wc;
    verify_witness_payload(wc, wp);
    c.check(tag + ".witness", wc.ok, "witness fails verification");
    unsigned wlen = row.at("witness").at("length").get<unsigned>();
    c.check(tag + ".witness_length", wlen == *upper,
            "witness length disagrees with upper");
  } else {
    c.check(tag + ".witness_presence", !upper,
            "upper bound without witness");
  }
  const auto& proof = row.at("lower_proof");
  std::string kind = proof.at("kind").get<std::string>();
  const auto detail = proof.value("detail", nlohmann::json::object());
  if (kind == "TRIVIAL") {
    c.check(tag + ".lower", lower <= (n == 0 ? 0u : 1u),
            "trivial proof cannot exceed 1");
  } else if (kind == "EXACT") {
    std::string method = detail.value("method", "");
    if (method == "membership") {
      c.check(tag + ".lower",
              lower <= 2 && !v_member(gj, abs(n)),
              "membership exclusion fails: |n| is a generator");
    } else if (method == "two_term_exclusion") {
      bool bound_ok = lower <= 3;
      c.check(tag + ".lower_bound_range", bound_ok,
              "two-term exclusion cannot prove more than 3");
      Checker tc;
      verify_two_term_exclusion(tc, gj, n, detail);
      for (auto& chk : tc.verdict.checks)
        c.check(tag + "." + chk.name, chk.pass, chk.detail);
      c.check(tag + ".not_member", !v_member(gj, abs(n)),
              "two-term exclusion with |n| a generator");
    } else {
      c.check(tag + ".lower", false, "unknown EXACT method " + method);
    }
  } else if (kind == "MODULAR") {
    if (!detail.contains("certificate")) {
      c.check(tag + ".lower", false, "modular proof without certificate");
    } else {
      nlohmann::json mp = {{"certificate", detail.at("certificate")},
                           {"targets", {to_dec(n)}}};
      Checker mc;
      verify_modular_payload(mc, mp);
      c.check(tag + ".certificate", mc.ok, "embedded certificate invalid");
      unsigned ch = detail.at("certificate").at("h").get<unsigned>();
      c.check(tag + ".lower", lower <= ch + 1,
              "modular bound exceeds certificate radius + 1");
    }
  } else if (kind == "EXHAUSTIVE") {
    c.check(tag + ".conditional", row.at("status") == "CAP_CONDITIONAL",
            "exhaustive lower bound must be conditional");
  } else {
    c.check(tag + ".lower", false, "unknown proof kind");
  }
  (void)h;
}

void verify_bundle_payload(Checker& c, const nlohmann::json& p) {
  bool shape = p.contains("generator_set") && p.contains("h") &&
               p.contains("evidence") && p.contains("status");
  c.check("shape", shape, "missing field");
  if (!shape) return;
  const auto& gj = p.at("generator_set");
  unsigned h = p.at("h").get<unsigned>();
  const auto& ev = p.at("evidence");
  std::optional<Int> value;
  if (!p.at("value").is_null())
    value = parse_int(p.at("value").get<std::string>());

  // Rows must be 1..k in order.
  bool seq = true;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (parse_int(ev[i].at("n").get<std::string>()) != Int(i + 1)) seq = false;
  }
  c.check("evidence_sequence", seq, "evidence rows must cover 1..k in order");
  if (!seq) return;

  Int frontier = value ? *value : (p.at("lower_bound").is_null()
                                       ? Int(0)
                                       : parse_int(p.at("lower_bound")
                                                       .get<std::string>()));
  c.check("evidence_completeness", Int(ev.size()) >= frontier - (value ? 0 : 1),
          "evidence does not reach the claimed frontier");

  bool proven_claim = p.at("status").get<std::string>() == "PROVEN";
  bool weakest_ok = true;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const auto& row = ev[i];
    Int n = Int(i + 1);
    std::string tag = "evidence[" + to_dec(n) + "]";
    verify_length_bound_row(c, gj, row, h, tag);
    unsigned lower = row.at("lower").get<unsigned>();
    std::optional<unsigned> upper;
    if (!row.at("upper").is_null()) upper = row.at("upper").get<unsigned>();
    bool excludes = (upper && *upper < h) || lower > h;
    bool is_value_row = value && n == *value;
    if (is_value_row) {
      c.check("value_row", upper && *upper == h && lower == h,
              "value row must pin the length to exactly h");
      if (proven_claim && row.at("status") != "PROVEN") weakest_ok = false;
    } else if (n < frontier || (value && n < *value)) {
      c.check("exclusion[" + to_dec(n) + "]", excludes,
              "row neither excluded nor the value");
    }
  }
  c.check("status_weakest_link", weakest_ok,
          "PROVEN bundle with a conditional value row");
}

}  // namespace

Verdict verify(const CertificateFile& cert) {
  Checker c;
  c.check("schema_version", cert.schema_version == kSchemaVersion,
          "unsupported schema version");
  if (!c.ok) return c.finish();
  try {
    switch (cert.kind) {
      case CertKind::UpperWitness:
        verify_witness_payload(c, cert.payload);
        break;
      case CertKind::LowerModular:
        verify_modular_payload(c, cert.payload);
        break;
      case CertKind::LowerExhaustive:
        verify_exhaustive_payload(c, cert.payload);
        break;
      case CertKind::LambdaBundle:
        verify_bundle_payload(c, cert.payload);
        break;
    }
  } catch (const Error& e) {
    c.check("well_formed", false, e.what());
  } catch (const nlohmann::json::exception& e) {
    c.check("well_formed", false, e.what());
  }
  return c.finish();
}

CertificateFile make_upper_witness(const GeneratorSet& g,
                                   const Representation& rep) {
  return fresh(CertKind::UpperWitness,
               {{"generator_set", g.to_json()},
                {"representation", rep.to_json()}});
}

CertificateFile make_lower_modular(const ObstructionCertificate& cert,
                                   const std::vector<Int>& targets) {
  std::vector<std::string> ts;
  for (const Int& t : targets) ts.push_back(to_dec(t));
  return fresh(CertKind::LowerModular,
               {{"certificate", cert.to_json()}, {"targets", ts}});
}

CertificateFile make_lower_exhaustive(const GeneratorSet& g, const Int& n,
                                      unsigned excluded_h,
                                      const SearchCaps& caps) {
  return fresh(CertKind::LowerExhaustive, {{"generator_set", g.to_json()},
                                           {"n", to_dec(n)},
                                           {"excluded_h", excluded_h},
                                           {"caps", caps.to_json()},
                                           {"status", "CAP_CONDITIONAL"}});
}

CertificateFile make_lambda_bundle(const GeneratorSet& g,
                                   const LambdaResult& result) {
  return fresh(CertKind::LambdaBundle, result.to_json(g));
}

void write_certificate(const CertificateFile& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot write " + path);
  out << cert.to_json().dump(2) << '\n';
}

CertificateFile read_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot read " + path);
  try {
    return CertificateFile::from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse_error, path + ": " + e.what());  // includes the offset
  }
}

}  // namespace adlab
