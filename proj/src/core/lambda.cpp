#include "lambda.hpp"

#include <thread>

namespace adlab {

nlohmann::json LambdaResult::to_json(const GeneratorSet& g) const {
  nlohmann::json j;
  j["h"] = h;
  j["generator_set"] = g.to_json();
  j["value"] = value ? nlohmann::json(to_dec(*value)) : nlohmann::json();
  j["lower_bound"] =
      lower_bound ? nlohmann::json(to_dec(*lower_bound)) : nlohmann::json();
  j["status"] = status;
  j["caps"] = caps.to_json();
  nlohmann::json ev = nlohmann::json::array();
  for (const LengthBound& b : evidence) ev.push_back(b.to_json());
  j["evidence"] = ev;
  return j;
}

LambdaResult lambda(const GeneratorSet& g, unsigned h, const SearchCaps& caps,
                    const LambdaOptions& options) {
  if (h < 1) fail(Errc::invalid_argument, "lambda needs h >= 1");
  caps.validate();
  LambdaResult res;
  res.h = h;
  res.caps = caps;

  LowerOptions lower_opt;
  if (options.use_certificate_search) lower_opt.search_budget = options.budget;

  for (Int n = 1; n <= options.n_max; ++n) {
    LengthBound b =
        compute_length_bound(n, h, g, caps, lower_opt, options.threads);
    res.evidence.push_back(b);
    if (b.upper && *b.upper < h) continue;  // witness excludes length h
    if (b.lower > h) continue;              // certificate excludes length h
    if (b.upper && *b.upper == h && b.lower >= h) {
      res.value = n;
      res.status = b.status();
      return res;
    }
    // Neither excluded nor confirmed: the scan stops at this frontier.
    res.lower_bound = n;
    res.status = "CAP_CONDITIONAL";
    return res;
  }
  res.lower_bound = Int(options.n_max);
  res.status = "CAP_CONDITIONAL";
  return res;
}

std::vector<LengthBound> exclusion_table(const GeneratorSet& g, unsigned h,
                                         uint64_t range_max,
                                         const SearchCaps& caps,
                                         unsigned threads, Cache* cache) {
  caps.validate();
  if (range_max < 1) fail(Errc::invalid_argument, "range_max must be >= 1");
  constexpr uint64_t kChunk = 256;
  std::vector<LengthBound> out;
  out.reserve(range_max);

  auto compute_chunk = [&](uint64_t lo, uint64_t hi) {
    std::vector<LengthBound> rows;
    rows.reserve(hi - lo + 1);
    for (uint64_t n = lo; n <= hi; ++n)
      rows.push_back(compute_length_bound(Int(n), h, g, caps, {}, 1));
    return rows;
  };

  std::vector<std::pair<uint64_t, uint64_t>> chunks;
  for (uint64_t lo = 1; lo <= range_max; lo += kChunk)
    chunks.emplace_back(lo, std::min(range_max, lo + kChunk - 1));

  std::vector<std::vector<LengthBound>> results(chunks.size());
  auto run = [&](std::size_t ci) {
    auto [lo, hi] = chunks[ci];
    nlohmann::json req = {{"op", "exclusion_table"},
                          {"generator_set", g.to_json()},
                          {"caps", caps.to_json()},
                          {"h", h},
                          {"lo", lo},
                          {"hi", hi}};
    if (cache) {
      if (auto hit = cache->get(req)) {
        std::vector<LengthBound> rows;
        for (const auto& rj : *hit) rows.push_back(LengthBound::from_json(rj));
        results[ci] = std::move(rows);
        return;
      }
    }
    results[ci] = compute_chunk(lo, hi);
    if (cache) {
      nlohmann::json rows = nlohmann::json::array();
      for (const LengthBound& b : results[ci]) rows.push_back(b.to_json());
      cache->put(req, rows);
    }
  };

  unsigned workers = std::max(1u, threads);
  if (workers == 1) {
    for (std::size_t ci = 0; ci < chunks.size(); ++ci) run(ci);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t ci = next.fetch_add(1); ci < chunks.size();
             ci = next.fetch_add(1))
          run(ci);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& rows : results)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

}  // namespace adlab
