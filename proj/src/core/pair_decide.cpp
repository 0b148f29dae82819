#include "pair_decide.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "primality.hpp"

namespace adlab {

namespace {

constexpr uint32_t kClassCap = 30000;      // per-axis lattice bound
constexpr uint64_t kCellCap = 1'000'000;   // joint lattice bound
constexpr unsigned kLadderPrimeTop = 1500;

uint64_t mul_order(uint64_t a, uint64_t m) {
  uint64_t r = a % m, o = 1;
  while (r != 1) {
    r = mulmod_u64(r, a % m, m);
    if (++o > m) fail(Errc::internal, "order loop overran modulus");
  }
  return o;
}

// Exponent-class state for (x mod lx, y mod ly).
struct ClassState {
  uint32_t lx = 1, ly = 1;
  std::vector<std::pair<uint32_t, uint32_t>> pairs{{0, 0}};

  bool lift(uint32_t ox, uint32_t oy,
            const std::function<bool(uint32_t, uint32_t)>& admit) {
    uint64_t nlx = std::lcm<uint64_t>(lx, ox), nly = std::lcm<uint64_t>(ly, oy);
    if (nlx > kClassCap || nly > kClassCap || nlx * nly > kCellCap)
      return false;  // too coarse to apply; caller skips this modulus
    std::vector<std::pair<uint32_t, uint32_t>> next;
    for (auto [a, b] : pairs) {
      for (uint64_t xr = a; xr < nlx; xr += lx) {
        for (uint64_t yr = b; yr < nly; yr += ly) {
          if (admit(static_cast<uint32_t>(xr % ox),
                    static_cast<uint32_t>(yr % oy)))
            next.emplace_back(static_cast<uint32_t>(xr),
                              static_cast<uint32_t>(yr));
        }
      }
    }
    lx = static_cast<uint32_t>(nlx);
    ly = static_cast<uint32_t>(nly);
    pairs = std::move(next);
    return true;
  }

  bool empty() const { return pairs.empty(); }
};

// Moduli are applied cheapest-constraint-first: tight little orders carry
// almost all of the killing power, and applying fine lattices early would
// crowd out the cheap contradictions.
std::vector<uint64_t> build_ladder_uncached(uint64_t p, uint64_t q) {
  std::vector<uint64_t> ladder;
  std::set<uint64_t> base_primes;
  for (auto [r, e] : factor_u64(p)) base_primes.insert(r);
  for (auto [r, e] : factor_u64(q)) base_primes.insert(r);
  // Prime powers of the base primes constrain one exponent at a time.
  for (uint64_t r : base_primes) {
    uint64_t m = r;
    while (m <= 250'000) {
      ladder.push_back(m);
      if (m > 250'000 / r) break;
      m *= r;
    }
  }
  for (uint32_t r : primes_up_to(kLadderPrimeTop)) {
    if (p % r == 0 || q % r == 0) continue;
    ladder.push_back(r);
    uint64_t r2 = static_cast<uint64_t>(r) * r;
    if (r <= 37) ladder.push_back(r2);
  }
  auto cost = [&](uint64_t m) -> uint64_t {
    auto [r, e] = factor_u64(m).front();
    uint64_t ox = (p % r == 0) ? 1 : mul_order(p, m);
    uint64_t oy = (q % r == 0) ? 1 : mul_order(q, m);
    if (p % r == 0 && q % r == 0) return 1;
    return std::max(ox, oy);
  };
  std::vector<std::pair<uint64_t, uint64_t>> costed;
  costed.reserve(ladder.size());
  for (uint64_t m : ladder) costed.emplace_back(cost(m), m);
  std::sort(costed.begin(), costed.end());
  ladder.clear();
  for (auto [c, m] : costed) {
    if (c > 4096) continue;  // long-period pins rarely contradict anything
    ladder.push_back(m);
  }
  return ladder;
}

const std::vector<uint64_t>& build_ladder(uint64_t p, uint64_t q) {
  static std::mutex mu;
  static std::map<std::pair<uint64_t, uint64_t>, std::vector<uint64_t>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = memo.try_emplace({p, q});
  if (fresh) it->second = build_ladder_uncached(p, q);
  return it->second;
}

// Residue behavior of b^t mod m for t beyond the scan bound: either the
// constant 0 (m a prime power of a prime dividing b) or the periodic orbit.
struct TermResidues {
  bool zero = false;
  uint32_t order = 1;
  std::vector<uint64_t> by_class;  // b^t mod m for t in [0, order)
};

std::optional<TermResidues> residues_mod(uint64_t b, uint64_t m, uint64_t r,
                                         unsigned e, unsigned scan_min) {
  TermResidues tr;
  if (b % r == 0) {
    // b^t = 0 mod r^e once t >= e; sound because t > scan_min >= e.
    if (e > scan_min) return std::nullopt;
    tr.zero = true;
    return tr;
  }
  if (std::gcd(b % m, m) != 1) return std::nullopt;  // mixed factors: skip
  tr.order = static_cast<uint32_t>(mul_order(b, m));
  tr.by_class.resize(tr.order);
  uint64_t v = 1 % m;
  for (uint32_t t = 0; t < tr.order; ++t) {
    tr.by_class[t] = v;
    v = mulmod_u64(v, b % m, m);
  }
  return tr;
}

}  // namespace

PairEqOutcome decide_pair_equation(const PairEquation& eq) {
  if (eq.c == 0 || eq.p < 2 || eq.q < 2)
    fail(Errc::invalid_argument, "degenerate pair equation");
  PairEqOutcome out;

  Int scan_top = abs(eq.c) * abs(eq.c);
  Int floor_top = Int(1) << 192;
  if (scan_top < floor_top) scan_top = floor_top;

  // Complete for y <= Y0: x is pinned by magnitude and tested exactly.
  {
    Int qy = ipow(Int(eq.q), eq.ylo);
    for (unsigned y = eq.ylo; qy <= scan_top; ++y, qy *= eq.q) {
      out.scan_y_max = y;
      Int t = eq.c - (eq.sq > 0 ? qy : Int(-qy));
      if (t == 0) continue;
      if ((t > 0) != (eq.sp > 0)) continue;
      unsigned x = 0;
      if (is_power_of(abs(t), eq.p, &x) && x >= eq.xlo)
        out.solutions.emplace_back(x, y);
    }
  }
  {
    Int px = ipow(Int(eq.p), eq.xlo);
    for (unsigned x = eq.xlo; px <= scan_top; ++x, px *= eq.p) {
      out.scan_x_max = x;
      Int t = eq.c - (eq.sp > 0 ? px : Int(-px));
      if (t == 0) continue;
      if ((t > 0) != (eq.sq > 0)) continue;
      unsigned y = 0;
      if (is_power_of(abs(t), eq.q, &y) && y >= eq.ylo &&
          !(y <= out.scan_y_max))
        out.solutions.emplace_back(x, y);
    }
  }
  std::sort(out.solutions.begin(), out.solutions.end());
  out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()),
                      out.solutions.end());
  if (!out.solutions.empty()) {
    out.status = PairEqOutcome::Status::Solved;
    return out;
  }

  // Congruence sieve for x > X0, y > Y0.
  ClassState state;
  std::vector<uint64_t> applied;
  for (uint64_t m : build_ladder(eq.p, eq.q)) {
    auto [r, e] = factor_u64(m).front();
    auto rp = residues_mod(eq.p, m, r, e, out.scan_x_max);
    auto rq = residues_mod(eq.q, m, r, e, out.scan_y_max);
    if (!rp || !rq) continue;
    uint64_t cm = static_cast<uint64_t>(((eq.c % m) + m) % m);
    bool applied_now = false;
    if (rp->zero && rq->zero) {
      if (cm != 0) {
        applied.push_back(m);
        out.status = PairEqOutcome::Status::Excluded;
        out.kill_moduli = applied;
        return out;
      }
      continue;
    }
    auto admit = [&](uint32_t xc, uint32_t yc) {
      uint64_t vp = rp->zero ? 0 : rp->by_class[xc];
      uint64_t vq = rq->zero ? 0 : rq->by_class[yc];
      uint64_t lhs = (eq.sp > 0 ? vp : m - vp % m) % m;
      lhs = (lhs + (eq.sq > 0 ? vq : m - vq % m)) % m;
      return lhs == cm;
    };
    applied_now = state.lift(rp->zero ? 1 : rp->order,
                             rq->zero ? 1 : rq->order, admit);
    if (applied_now) {
      applied.push_back(m);
      if (state.empty()) {
        out.status = PairEqOutcome::Status::Excluded;
        out.kill_moduli = applied;
        return out;
      }
    }
  }
  out.status = PairEqOutcome::Status::Unknown;
  return out;
}

bool recheck_pair_exclusion(const PairEquation& eq, unsigned scan_x_max,
                            unsigned scan_y_max,
                            const std::vector<uint64_t>& kill_moduli) {
  if (kill_moduli.empty()) return false;
  // Re-scan with plain loops.
  {
    Int qy = ipow(Int(eq.q), eq.ylo);
    for (unsigned y = eq.ylo; y <= scan_y_max; ++y, qy *= eq.q) {
      Int t = eq.c - (eq.sq > 0 ? qy : Int(-qy));
      unsigned x = 0;
      if (t != 0 && (t > 0) == (eq.sp > 0) && is_power_of(abs(t), eq.p, &x) &&
          x >= eq.xlo)
        return false;  // claimed excluded but a solution exists
    }
    Int px = ipow(Int(eq.p), eq.xlo);
    for (unsigned x = eq.xlo; x <= scan_x_max; ++x, px *= eq.p) {
      Int t = eq.c - (eq.sp > 0 ? px : Int(-px));
      unsigned y = 0;
      if (t != 0 && (t > 0) == (eq.sq > 0) && is_power_of(abs(t), eq.q, &y) &&
          y >= eq.ylo)
        return false;
    }
  }
  // Joint emptiness over the combined exponent lattice.  The split is
  // complete for any scan bounds: the loops above covered y <= scan_y_max
  // (every x tested exactly) and x <= scan_x_max, and the zero-residue rule
  // inside residues_mod refuses moduli whose preperiod exceeds the bounds.
  uint64_t lx = 1, ly = 1;
  struct ModInfo {
    uint64_t m, cm;
    TermResidues rp, rq;
  };
  std::vector<ModInfo> infos;
  for (uint64_t m : kill_moduli) {
    auto f = factor_u64(m);
    if (f.size() != 1) return false;  // ladder moduli are prime powers
    auto [r, e] = f.front();
    auto rp = residues_mod(eq.p, m, r, e, scan_x_max);
    auto rq = residues_mod(eq.q, m, r, e, scan_y_max);
    if (!rp || !rq) return false;
    infos.push_back({m, static_cast<uint64_t>(((eq.c % m) + m) % m), *rp, *rq});
    lx = std::lcm(lx, static_cast<uint64_t>(rp->zero ? 1 : rp->order));
    ly = std::lcm(ly, static_cast<uint64_t>(rq->zero ? 1 : rq->order));
    if (lx * ly > 4'000'000) return false;
  }
  for (uint64_t x = 0; x < lx; ++x) {
    for (uint64_t y = 0; y < ly; ++y) {
      bool ok = true;
      for (const ModInfo& mi : infos) {
        uint64_t vp = mi.rp.zero ? 0 : mi.rp.by_class[x % mi.rp.order];
        uint64_t vq = mi.rq.zero ? 0 : mi.rq.by_class[y % mi.rq.order];
        uint64_t lhs = (eq.sp > 0 ? vp : (mi.m - vp % mi.m) % mi.m);
        lhs = (lhs + (eq.sq > 0 ? vq : (mi.m - vq % mi.m) % mi.m)) % mi.m;
        if (lhs != mi.cm) {
          ok = false;
          break;
        }
      }
      if (ok) return false;  // a residue class survives: kill not verified
    }
  }
  return true;
}

bool two_term_exact_supported(const GeneratorSet& g) {
  if (g.kind() == GenKind::Smooth) return g.elements().size() == 2;
  return g.elements().size() <= 8;
}

namespace {

nlohmann::json eq_json(const PairEquation& eq, const PairEqOutcome& o) {
  nlohmann::json j;
  j["p"] = std::to_string(eq.p);
  j["q"] = std::to_string(eq.q);
  j["sp"] = eq.sp;
  j["sq"] = eq.sq;
  j["c"] = to_dec(eq.c);
  j["x_min"] = eq.xlo;
  j["y_min"] = eq.ylo;
  j["scan_x_max"] = o.scan_x_max;
  j["scan_y_max"] = o.scan_y_max;
  std::vector<std::string> mods;
  for (uint64_t m : o.kill_moduli) mods.push_back(std::to_string(m));
  j["kill_moduli"] = mods;
  return j;
}

void add_witness(std::vector<Representation>* ws, const Int& target, Int a,
                 Int b) {
  Representation r;
  r.target = target;
  r.terms = {Term::from_value(a), Term::from_value(b)};
  r.canonicalize();
  ws->push_back(std::move(r));
}

void add_power_witness(std::vector<Representation>* ws, const Int& target,
                       int sa, uint64_t ba, unsigned ea, int sb, uint64_t bb,
                       unsigned eb) {
  Representation r;
  r.target = target;
  r.terms = {Term::power(sa, ba, ea), Term::power(sb, bb, eb)};
  r.canonicalize();
  ws->push_back(std::move(r));
}

}  // namespace

TwoTermOutcome decide_two_term(const Int& n, const GeneratorSet& g) {
  if (n == 0) fail(Errc::invalid_argument, "two-term decision needs n != 0");
  if (!two_term_exact_supported(g))
    return {TwoTermOutcome::Status::Unknown, std::nullopt, {}};
  Int M = abs(n);
  bool flip = n < 0;

  std::vector<Representation> witnesses;
  nlohmann::json branches = nlohmann::json::array();
  bool unknown = false;

  if (g.kind() == GenKind::Smooth) {
    uint64_t p = g.elements()[0], q = g.elements()[1];
    // Sums are bounded by M outright.
    for (const Int& a : g.enumerate_up_to(M)) {
      if (2 * a > M) break;
      Int b = M - a;
      if (b >= 1 && g.contains(b)) add_witness(&witnesses, M, a, b);
    }
    // Differences a - b = M: gcd(a, b) is a smooth divisor of M; dividing it
    // out leaves either a shifted member (b' = 1) or a coprime pure-power
    // pair, one power of p against one power of q.
    Int rest = M;
    unsigned vp = remove_factor(&rest, p);
    unsigned vq = remove_factor(&rest, q);
    for (unsigned i = 0; i <= vp; ++i) {
      for (unsigned j = 0; j <= vq; ++j) {
        Int gdiv = ipow(Int(p), i) * ipow(Int(q), j);
        Int np = M / gdiv;
        Int shifted = np + 1;
        bool member = g.contains(shifted);
        if (member) add_witness(&witnesses, M, gdiv * shifted, -gdiv);
        branches.push_back({{"divisor", to_dec(gdiv)},
                            {"kind", "shifted_membership"},
                            {"value", to_dec(shifted)},
                            {"member", member}});
        for (int dir = 0; dir < 2; ++dir) {
          PairEquation eq;
          eq.p = p;
          eq.q = q;
          eq.sp = dir == 0 ? 1 : -1;
          eq.sq = -eq.sp;
          eq.c = np;
          eq.xlo = 1;
          eq.ylo = 1;
          PairEqOutcome o = decide_pair_equation(eq);
          for (auto [x, y] : o.solutions) {
            Int a = gdiv * ipow(Int(p), x), b = gdiv * ipow(Int(q), y);
            add_witness(&witnesses, M, eq.sp > 0 ? a : -a, eq.sq > 0 ? b : -b);
          }
          nlohmann::json bj = eq_json(eq, o);
          bj["divisor"] = to_dec(gdiv);
          bj["kind"] = "pair_equation";
          bj["outcome"] = o.status == PairEqOutcome::Status::Solved ? "solved"
                          : o.status == PairEqOutcome::Status::Excluded
                              ? "excluded"
                              : "unknown";
          branches.push_back(bj);
          if (o.status == PairEqOutcome::Status::Unknown) unknown = true;
        }
      }
    }
  } else {
    const auto& bases = g.elements();
    // Same-base words b^x +/- b^y = M with x >= y: b^y divides M, and the
    // cofactor must be b^k -/+ 1.
    for (uint64_t b : bases) {
      Int by = 1;
      for (unsigned y = 0; by <= M; ++y, by *= b) {
        if (M % by != 0) continue;
        Int cof = M / by;
        unsigned k = 0;
        if (is_power_of(cof + 1, b, &k) && k >= 1)
          add_power_witness(&witnesses, M, 1, b, y + k, -1, b, y);
        if (cof >= 2 && is_power_of(cof - 1, b, &k))
          add_power_witness(&witnesses, M, 1, b, y + k, 1, b, y);
      }
    }
    // Cross-base pairs.
    for (std::size_t i = 0; i < bases.size(); ++i) {
      for (std::size_t j = i + 1; j < bases.size(); ++j) {
        uint64_t bi = bases[i], bj = bases[j];
        // Sums are bounded by M.
        Int bjy = 1;
        for (unsigned y = 0; bjy <= M; ++y, bjy *= bj) {
          Int t = M - bjy;
          unsigned x = 0;
          if (t >= 1 && is_power_of(t, bi, &x))
            add_power_witness(&witnesses, M, 1, bi, x, 1, bj, y);
        }
        for (int dir = 0; dir < 2; ++dir) {
          PairEquation eq;
          eq.p = bi;
          eq.q = bj;
          eq.sp = dir == 0 ? 1 : -1;
          eq.sq = -eq.sp;
          eq.c = M;
          eq.xlo = 0;
          eq.ylo = 0;
          PairEqOutcome o = decide_pair_equation(eq);
          for (auto [x, y] : o.solutions)
            add_power_witness(&witnesses, M, eq.sp, bi, x, eq.sq, bj, y);
          nlohmann::json bj2 = eq_json(eq, o);
          bj2["kind"] = "pair_equation";
          bj2["outcome"] = o.status == PairEqOutcome::Status::Solved ? "solved"
                           : o.status == PairEqOutcome::Status::Excluded
                               ? "excluded"
                               : "unknown";
          branches.push_back(bj2);
          if (o.status == PairEqOutcome::Status::Unknown) unknown = true;
        }
      }
    }
  }

  TwoTermOutcome out;
  if (!witnesses.empty()) {
    out.status = TwoTermOutcome::Status::Witness;
    Representation best = witnesses.front();
    for (const Representation& w : witnesses) {
      if (Representation::lex_less(w, best)) best = w;
    }
    if (flip) {
      best.target = n;
      for (Term& t : best.terms) t.sign = -t.sign;
      best.canonicalize();
    }
    out.witness = best;
    return out;
  }
  out.status = unknown ? TwoTermOutcome::Status::Unknown
                       : TwoTermOutcome::Status::Excluded;
  out.proof = {{"method", "two_term_exclusion"},
               {"n", to_dec(M)},
               {"generator_set", g.to_json()},
               {"branches", branches}};
  return out;
}

}  // namespace adlab
