#include "adlab/adlab.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core/ball.hpp"
#include "core/cache.hpp"
#include "core/certio.hpp"
#include "core/lambda.hpp"
#include "core/length_bound.hpp"
#include "core/mitm.hpp"
#include "core/sieve.hpp"
#include "core/universe.hpp"
#include "core/version.hpp"

using nlohmann::json;

struct adlab_genset {
  adlab::GeneratorSet impl;
};
struct adlab_caps {
  adlab::SearchCaps impl;
};
struct adlab_session {
  std::optional<adlab::Cache> cache;
  unsigned threads = 1;
};

namespace {

thread_local std::string t_last_error;

adlab_status map_errc(adlab::Errc c) {
  using adlab::Errc;
  switch (c) {
    case Errc::invalid_argument: return ADLAB_ERR_INVALID_ARGUMENT;
    case Errc::non_coprime: return ADLAB_ERR_NON_COPRIME;
    case Errc::window_exceeds_caps: return ADLAB_ERR_WINDOW_EXCEEDS_CAPS;
    case Errc::budget_exhausted: return ADLAB_ERR_BUDGET_EXHAUSTED;
    case Errc::parse_error: return ADLAB_ERR_PARSE;
    case Errc::schema_mismatch: return ADLAB_ERR_SCHEMA;
    case Errc::verification_failed: return ADLAB_ERR_VERIFICATION_FAILED;
    case Errc::io_error: return ADLAB_ERR_IO;
    case Errc::universe_too_large: return ADLAB_ERR_UNIVERSE_TOO_LARGE;
    case Errc::internal: return ADLAB_ERR_INTERNAL;
  }
  return ADLAB_ERR_INTERNAL;
}

template <typename Fn>
adlab_status guarded(Fn&& fn) {
  try {
    fn();
    return ADLAB_OK;
  } catch (const adlab::Error& e) {
    t_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return ADLAB_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) { *out = dup_string(j.dump(2)); }

adlab::GeneratorSet parse_csv_genset(const char* csv, bool smooth) {
  if (!csv) adlab::fail(adlab::Errc::invalid_argument, "null list");
  std::vector<uint64_t> xs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    adlab::Int v = adlab::parse_int(item);
    if (v < 2 || v > adlab::Int(UINT64_MAX))
      adlab::fail(adlab::Errc::invalid_argument,
                  "list entry out of range: " + item);
    xs.push_back(v.convert_to<uint64_t>());
  }
  return smooth ? adlab::GeneratorSet::smooth(xs)
                : adlab::GeneratorSet::power_union(xs);
}

const adlab::SearchCaps caps_or_default(const adlab_caps* caps,
                                        const adlab_genset* g) {
  if (caps) return caps->impl;
  return adlab::SearchCaps::defaults_for(g->impl);
}

unsigned session_threads(const adlab_session* s) {
  return s ? s->threads : 1;
}

adlab::Cache* session_cache(const adlab_session* s) {
  if (!s) return nullptr;
  return const_cast<adlab_session*>(s)->cache ? &*const_cast<adlab_session*>(s)->cache
                                              : nullptr;
}

}  // namespace

extern "C" {

const char* adlab_version(void) { return adlab::kToolVersion; }

const char* adlab_last_error(void) { return t_last_error.c_str(); }

void adlab_string_free(char* s) { std::free(s); }

adlab_status adlab_genset_new_smooth(const char* primes_csv,
                                     adlab_genset** out) {
  return guarded([&] { *out = new adlab_genset{parse_csv_genset(primes_csv, true)}; });
}

adlab_status adlab_genset_new_power_union(const char* bases_csv,
                                          adlab_genset** out) {
  return guarded(
      [&] { *out = new adlab_genset{parse_csv_genset(bases_csv, false)}; });
}

void adlab_genset_free(adlab_genset* g) { delete g; }

adlab_status adlab_genset_describe(const adlab_genset* g, char** out_json) {
  return guarded([&] { emit(out_json, g->impl.to_json()); });
}

adlab_status adlab_caps_new(adlab_caps** out) {
  return guarded([&] {
    adlab::SearchCaps caps;
    caps.magnitude_cap = adlab::Int(1) << 520;
    *out = new adlab_caps{caps};
  });
}

adlab_status adlab_caps_default(const adlab_genset* g, adlab_caps** out) {
  return guarded(
      [&] { *out = new adlab_caps{adlab::SearchCaps::defaults_for(g->impl)}; });
}

adlab_status adlab_caps_set_exponent(adlab_caps* caps, uint64_t base,
                                     unsigned cap) {
  return guarded([&] {
    if (base < 2)
      adlab::fail(adlab::Errc::invalid_argument, "base must be >= 2");
    caps->impl.exponent_caps[base] = cap;
  });
}

adlab_status adlab_caps_set_magnitude(adlab_caps* caps,
                                      const char* magnitude_dec) {
  return guarded([&] {
    caps->impl.magnitude_cap = adlab::parse_int(magnitude_dec);
    caps->impl.validate();
  });
}

void adlab_caps_free(adlab_caps* caps) { delete caps; }

adlab_status adlab_session_new(adlab_session** out) {
  return guarded([&] { *out = new adlab_session; });
}

adlab_status adlab_session_set_cache_dir(adlab_session* s, const char* dir) {
  return guarded([&] { s->cache.emplace(dir); });
}

adlab_status adlab_session_set_threads(adlab_session* s, unsigned threads) {
  return guarded([&] {
    if (threads < 1 || threads > 256)
      adlab::fail(adlab::Errc::invalid_argument, "threads must be in [1,256]");
    s->threads = threads;
  });
}

void adlab_session_free(adlab_session* s) { delete s; }

adlab_status adlab_enumerate_up_to(const adlab_genset* g,
                                   const char* bound_dec, char** out_json) {
  return guarded([&] {
    std::vector<std::string> out;
    for (const adlab::Int& v : g->impl.enumerate_up_to(adlab::parse_int(bound_dec)))
      out.push_back(adlab::to_dec(v));
    emit(out_json, json(out));
  });
}

adlab_status adlab_contains(const adlab_genset* g, const char* n_dec,
                            int symmetric, int* out_member) {
  return guarded([&] {
    adlab::Int n = adlab::parse_int(n_dec);
    *out_member = symmetric ? g->impl.contains_symmetric(n) : g->impl.contains(n);
  });
}

adlab_status adlab_residue_closure(const adlab_genset* g, uint64_t modulus,
                                   char** out_json) {
  return guarded([&] {
    std::vector<std::string> out;
    for (uint64_t r : g->impl.residue_closure(modulus))
      out.push_back(std::to_string(r));
    emit(out_json, json(out));
  });
}

adlab_status adlab_term_universe(const adlab_genset* g, const adlab_caps* caps,
                                 char** out_json) {
  return guarded([&] {
    std::vector<std::string> out;
    for (const adlab::Int& v :
         adlab::term_universe_values(g->impl, caps_or_default(caps, g)))
      out.push_back(adlab::to_dec(v));
    emit(out_json, json(out));
  });
}

adlab_status adlab_is_representable(const adlab_session* s,
                                    const adlab_genset* g, const char* n_dec,
                                    unsigned h, const adlab_caps* caps,
                                    char** out_json) {
  return guarded([&] {
    auto rep = adlab::is_representable(adlab::parse_int(n_dec), h, g->impl,
                                       caps_or_default(caps, g),
                                       session_threads(s));
    emit(out_json, rep ? rep->to_json() : json());
  });
}

adlab_status adlab_representable_record(const adlab_session* s,
                                        const adlab_genset* g,
                                        const char* n_dec, unsigned h,
                                        const adlab_caps* caps,
                                        char** out_json) {
  return guarded([&] {
    adlab::Int n = adlab::parse_int(n_dec);
    adlab::SearchCaps effective = caps_or_default(caps, g);
    for (unsigned hh = 0; hh <= h; ++hh) {
      if (auto rep = adlab::is_representable(n, hh, g->impl, effective,
                                             session_threads(s))) {
        emit(out_json, adlab::make_upper_witness(g->impl, *rep).to_json());
        return;
      }
    }
    emit(out_json,
         adlab::make_lower_exhaustive(g->impl, n, h, effective).to_json());
  });
}

adlab_status adlab_length(const adlab_session* s, const adlab_genset* g,
                          const char* n_dec, unsigned h_max,
                          const adlab_caps* caps, char** out_json) {
  return guarded([&] {
    adlab::LengthBound b =
        adlab::compute_length_bound(adlab::parse_int(n_dec), h_max, g->impl,
                                    caps_or_default(caps, g), {},
                                    session_threads(s));
    emit(out_json, b.to_json());
  });
}

adlab_status adlab_metric_distance(const adlab_session* s,
                                   const adlab_genset* g, const char* x_dec,
                                   const char* y_dec, unsigned h_max,
                                   const adlab_caps* caps, char** out_json) {
  return guarded([&] {
    adlab::LengthBound b = adlab::metric_distance(
        adlab::parse_int(x_dec), adlab::parse_int(y_dec), g->impl, h_max,
        caps_or_default(caps, g), {}, session_threads(s));
    emit(out_json, b.to_json());
  });
}

adlab_status adlab_ball(const adlab_session* s, const adlab_genset* g,
                        unsigned h, int64_t window, const adlab_caps* caps,
                        int include_witnesses, char** out_json) {
  return guarded([&] {
    adlab::BallOptions opt;
    opt.threads = session_threads(s);
    adlab::BallResult res =
        adlab::ball(h, window, g->impl, caps_or_default(caps, g), opt);
    json entries = json::array();
    for (int64_t n = -window; n <= window; ++n) {
      auto len = res.length_of(n);
      if (!len) continue;
      json e = {{"n", std::to_string(n)}, {"length", *len}};
      if (include_witnesses)
        e["witness"] = res.witness_of(n, g->impl).to_json();
      entries.push_back(e);
    }
    emit(out_json, json{{"h", h},
                        {"window", std::to_string(window)},
                        {"term_bound", std::to_string(res.term_bound())},
                        {"work_bound", std::to_string(res.work_bound())},
                        {"entries", entries}});
  });
}

adlab_status adlab_sphere(const adlab_session* s, const adlab_genset* g,
                          unsigned h, int64_t window, const adlab_caps* caps,
                          char** out_json) {
  return guarded([&] {
    adlab::BallOptions opt;
    opt.threads = session_threads(s);
    adlab::BallResult res =
        adlab::ball(h, window, g->impl, caps_or_default(caps, g), opt);
    std::vector<std::string> out;
    for (int64_t n : res.sphere(h)) out.push_back(std::to_string(n));
    emit(out_json, json{{"h", h},
                        {"window", std::to_string(window)},
                        {"count", out.size()},
                        {"elements", out}});
  });
}

adlab_status adlab_delta(uint64_t n, char** out_json) {
  return guarded([&] { emit(out_json, adlab::delta(n).to_json()); });
}

adlab_status adlab_delta_search(uint64_t max_n, unsigned top,
                                char** out_json) {
  return guarded([&] {
    json out = json::array();
    unsigned emitted = 0;
    for (uint64_t n : adlab::obstruction_candidates(max_n)) {
      if (emitted++ >= top) break;
      out.push_back(adlab::delta(n).to_json());
    }
    emit(out_json, out);
  });
}

adlab_status adlab_find_obstruction(const adlab_session* s,
                                    const adlab_genset* g, unsigned h,
                                    uint64_t max_n, unsigned max_q,
                                    uint64_t max_modulus, char** out_json) {
  return guarded([&] {
    (void)s;
    adlab::ObstructionBudget budget;
    if (max_n) budget.max_n = max_n;
    if (max_q) budget.max_q_count = max_q;
    if (max_modulus) budget.max_modulus = max_modulus;
    adlab::ObstructionDiagnostics diag;
    auto cert = adlab::find_obstruction(g->impl, h, budget, &diag);
    if (!cert) {
      emit(out_json,
           json{{"found", false},
                {"candidates_tried", diag.candidates_tried},
                {"largest_modulus", std::to_string(diag.largest_modulus)},
                {"best_coverage_ratio", diag.best_coverage_ratio}});
      adlab::fail(adlab::Errc::budget_exhausted,
                  "no obstruction found within budget");
    }
    emit(out_json,
         adlab::make_lower_modular(*cert, {}).to_json());
  });
}

adlab_status adlab_certify_lower(const char* certificate_file_json,
                                 const char* n_dec, char** out_json) {
  return guarded([&] {
    json j;
    try {
      j = json::parse(certificate_file_json);
    } catch (const json::parse_error& e) {
      adlab::fail(adlab::Errc::parse_error, e.what());
    }
    adlab::CertificateFile file = adlab::CertificateFile::from_json(j);
    if (file.kind != adlab::CertKind::LowerModular)
      adlab::fail(adlab::Errc::invalid_argument,
                  "certify_lower expects a LOWER_MODULAR certificate");
    auto cert = adlab::ObstructionCertificate::from_json(
        file.payload.at("certificate"));
    auto bound = adlab::certify_lower(adlab::parse_int(n_dec), cert);
    emit(out_json,
         json{{"n", n_dec},
              {"applicable", bound.has_value()},
              {"lower", bound ? json(*bound) : json()}});
  });
}

adlab_status adlab_lambda(const adlab_session* s, const adlab_genset* g,
                          unsigned h, const adlab_caps* caps, uint64_t n_max,
                          const char* evidence_dir, char** out_json) {
  return guarded([&] {
    adlab::LambdaOptions opt;
    if (n_max) opt.n_max = n_max;
    opt.threads = session_threads(s);
    adlab::LambdaResult res =
        adlab::lambda(g->impl, h, caps_or_default(caps, g), opt);
    adlab::CertificateFile bundle = adlab::make_lambda_bundle(g->impl, res);
    if (evidence_dir && *evidence_dir) {
      std::string dir(evidence_dir);
      std::filesystem::create_directories(dir);
      std::string bundle_path = dir + "/lambda_bundle.json";
      adlab::write_certificate(bundle, bundle_path);
      json index = {{"bundle", "lambda_bundle.json"},
                    {"h", h},
                    {"generator_set", g->impl.to_json()}};
      std::ofstream idx(dir + "/index.json");
      if (!idx)
        adlab::fail(adlab::Errc::io_error, "cannot write evidence index");
      idx << index.dump(2) << '\n';
    }
    emit(out_json, bundle.to_json());
  });
}

adlab_status adlab_exclusion_table(const adlab_session* s,
                                   const adlab_genset* g, unsigned h,
                                   uint64_t range_max, const adlab_caps* caps,
                                   char** out_json) {
  return guarded([&] {
    auto rows = adlab::exclusion_table(g->impl, h, range_max,
                                       caps_or_default(caps, g),
                                       session_threads(s), session_cache(s));
    json out = json::array();
    for (const adlab::LengthBound& b : rows) out.push_back(b.to_json());
    emit(out_json, out);
  });
}

adlab_status adlab_verify_json(const char* certificate_file_json,
                               char** out_verdict_json) {
  return guarded([&] {
    json j;
    try {
      j = json::parse(certificate_file_json);
    } catch (const json::parse_error& e) {
      adlab::fail(adlab::Errc::parse_error, e.what());  // includes the offset
    }
    adlab::Verdict v = adlab::verify(adlab::CertificateFile::from_json(j));
    emit(out_verdict_json, v.to_json());
  });
}

adlab_status adlab_verify_file(const char* path, char** out_verdict_json) {
  return guarded([&] {
    adlab::Verdict v = adlab::verify(adlab::read_certificate(path));
    emit(out_verdict_json, v.to_json());
  });
}

adlab_status adlab_cache_gc(const adlab_session* s, char** out_json) {
  return guarded([&] {
    adlab::Cache* cache = session_cache(s);
    if (!cache)
      adlab::fail(adlab::Errc::invalid_argument, "session has no cache dir");
    emit(out_json, json{{"removed", cache->gc()}});
  });
}

}  // extern "C"
