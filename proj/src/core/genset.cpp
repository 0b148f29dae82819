#include "genset.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "primality.hpp"

namespace adlab {

namespace {

std::vector<uint64_t> checked_sorted(std::vector<uint64_t> xs,
                                     const char* what) {
  if (xs.empty()) fail(Errc::invalid_argument, std::string(what) + " list is empty");
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i] == xs[i + 1])
      fail(Errc::invalid_argument,
           std::string("duplicate ") + what + ": " + std::to_string(xs[i]));
  }
  return xs;
}

std::vector<uint64_t> support_of(const std::vector<uint64_t>& bases) {
  std::set<uint64_t> s;
  for (uint64_t b : bases)
    for (auto [p, e] : factor_u64(b)) s.insert(p);
  return {s.begin(), s.end()};
}

}  // namespace

GeneratorSet GeneratorSet::smooth(std::vector<uint64_t> primes) {
  primes = checked_sorted(std::move(primes), "prime");
  for (uint64_t p : primes) {
    if (!is_prime_u64(p))
      fail(Errc::invalid_argument, std::to_string(p) + " is not prime");
  }
  auto support = primes;
  return GeneratorSet(GenKind::Smooth, std::move(primes), std::move(support));
}

GeneratorSet GeneratorSet::power_union(std::vector<uint64_t> bases) {
  bases = checked_sorted(std::move(bases), "base");
  if (bases.front() < 2)
    fail(Errc::invalid_argument, "bases must be >= 2");
  auto support = support_of(bases);
  return GeneratorSet(GenKind::PowerUnion, std::move(bases), std::move(support));
}

bool GeneratorSet::contains(const Int& n) const {
  if (n < 1) return false;
  if (n == 1) return true;
  if (kind_ == GenKind::Smooth) {
    Int rest = n;
    for (uint64_t p : elements_) remove_factor(&rest, p);
    return rest == 1;
  }
  for (uint64_t b : elements_) {
    if (is_power_of(n, b)) return true;
  }
  return false;
}

bool GeneratorSet::contains_symmetric(const Int& n) const {
  if (n == 0) return false;
  return contains(abs(n));
}

std::vector<Int> GeneratorSet::enumerate_up_to(const Int& bound) const {
  if (bound < 1) fail(Errc::invalid_argument, "bound must be >= 1");
  std::vector<Int> out;
  if (kind_ == GenKind::PowerUnion) {
    std::set<Int> seen{Int(1)};
    for (uint64_t b : elements_) {
      Int v = b;
      while (v <= bound) {
        seen.insert(v);
        v *= b;
      }
    }
    out.assign(seen.begin(), seen.end());
    return out;
  }
  // Smooth numbers in order via a min-heap merge.  Each entry carries the
  // index of the largest prime used so far, which prevents duplicates.
  using Entry = std::pair<Int, std::size_t>;
  auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  heap.emplace(Int(1), 0);
  while (!heap.empty()) {
    auto [v, idx] = heap.top();
    heap.pop();
    out.push_back(v);
    for (std::size_t i = idx; i < elements_.size(); ++i) {
      Int w = v * elements_[i];
      if (w <= bound) heap.emplace(std::move(w), i);
    }
  }
  return out;
}

std::vector<uint64_t> GeneratorSet::residue_closure(uint64_t modulus) const {
  if (modulus < 2) fail(Errc::invalid_argument, "modulus must be >= 2");
  if (modulus > (1ull << 30))
    fail(Errc::invalid_argument, "modulus exceeds the 2^30 dense-set limit");
  for (uint64_t p : support_) {
    if (std::gcd(p, modulus) != 1)
      fail(Errc::non_coprime, "generator prime " + std::to_string(p) +
                                  " shares a factor with modulus " +
                                  std::to_string(modulus));
  }
  std::vector<bool> seen(modulus, false);
  std::vector<uint64_t> out;
  if (kind_ == GenKind::Smooth) {
    // Fixpoint of multiplication by the prime residues, starting from 1.
    std::vector<uint64_t> stack{1 % modulus};
    seen[1 % modulus] = true;
    while (!stack.empty()) {
      uint64_t r = stack.back();
      stack.pop_back();
      out.push_back(r);
      for (uint64_t p : elements_) {
        uint64_t s = mulmod_u64(r, p % modulus, modulus);
        if (!seen[s]) {
          seen[s] = true;
          stack.push_back(s);
        }
      }
    }
  } else {
    // A power union is the union of the cyclic orbits of the bases; it is not
    // closed under cross-base products.  Each orbit is walked to completion
    // (back to 1): stopping at a residue another base already produced would
    // drop the rest of this base's cycle.
    seen[1 % modulus] = true;
    out.push_back(1 % modulus);
    for (uint64_t b : elements_) {
      uint64_t r = 1 % modulus;
      do {
        r = mulmod_u64(r, b % modulus, modulus);
        if (!seen[r]) {
          seen[r] = true;
          out.push_back(r);
        }
      } while (r != 1 % modulus);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string GeneratorSet::describe() const {
  std::string s = kind_ == GenKind::Smooth ? "smooth(" : "powers(";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(elements_[i]);
  }
  return s + ")";
}

nlohmann::json GeneratorSet::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_ == GenKind::Smooth ? "SMOOTH" : "POWER_UNION";
  std::vector<std::string> elems;
  for (uint64_t e : elements_) elems.push_back(std::to_string(e));
  j[kind_ == GenKind::Smooth ? "primes" : "bases"] = elems;
  return j;
}

GeneratorSet GeneratorSet::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    fail(Errc::schema_mismatch, "generator_set: missing kind");
  std::string kind = j.at("kind").get<std::string>();
  auto parse_list = [&](const char* key) {
    if (!j.contains(key))
      fail(Errc::schema_mismatch, std::string("generator_set: missing ") + key);
    std::vector<uint64_t> out;
    for (const auto& e : j.at(key)) {
      Int v = parse_int(e.get<std::string>());
      if (v < 2 || v > Int(UINT64_MAX))
        fail(Errc::schema_mismatch, "generator element out of range");
      out.push_back(v.convert_to<uint64_t>());
    }
    return out;
  };
  if (kind == "SMOOTH") return smooth(parse_list("primes"));
  if (kind == "POWER_UNION") return power_union(parse_list("bases"));
  fail(Errc::schema_mismatch, "generator_set: unknown kind " + kind);
}

}  // namespace adlab
