/*
 * adlab — word lengths, balls and spheres of Z under infinite generating
 * sets (smooth numbers, unions of power towers), with machine-checkable
 * upper-bound witnesses and modular lower-bound certificates.
 *
 * C interface: opaque handles, status codes, JSON result strings.  Every
 * out_json string is heap-allocated and must be released with
 * adlab_string_free.  Arbitrary-precision integers cross this boundary as
 * decimal strings.
 */
#ifndef ADLAB_H
#define ADLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adlab_status {
  ADLAB_OK = 0,
  ADLAB_ERR_INVALID_ARGUMENT = 1,
  ADLAB_ERR_NON_COPRIME = 2,
  ADLAB_ERR_WINDOW_EXCEEDS_CAPS = 3,
  ADLAB_ERR_BUDGET_EXHAUSTED = 4,
  ADLAB_ERR_PARSE = 5,
  ADLAB_ERR_SCHEMA = 6,
  ADLAB_ERR_VERIFICATION_FAILED = 7,
  ADLAB_ERR_IO = 8,
  ADLAB_ERR_UNIVERSE_TOO_LARGE = 9,
  ADLAB_ERR_INTERNAL = 10
} adlab_status;

typedef struct adlab_genset adlab_genset;
typedef struct adlab_caps adlab_caps;
typedef struct adlab_session adlab_session;

const char* adlab_version(void);
/* Thread-local message describing the most recent failure in this thread. */
const char* adlab_last_error(void);
void adlab_string_free(char* s);

/* Generating sets.  CSV lists like "2,3". */
adlab_status adlab_genset_new_smooth(const char* primes_csv,
                                     adlab_genset** out);
adlab_status adlab_genset_new_power_union(const char* bases_csv,
                                          adlab_genset** out);
void adlab_genset_free(adlab_genset* g);
adlab_status adlab_genset_describe(const adlab_genset* g, char** out_json);

/* Search caps.  adlab_caps_default derives per-base exponent caps near
 * 2^512 and a matching magnitude cap. */
adlab_status adlab_caps_new(adlab_caps** out);
adlab_status adlab_caps_default(const adlab_genset* g, adlab_caps** out);
adlab_status adlab_caps_set_exponent(adlab_caps* caps, uint64_t base,
                                     unsigned cap);
adlab_status adlab_caps_set_magnitude(adlab_caps* caps,
                                      const char* magnitude_dec);
void adlab_caps_free(adlab_caps* caps);

/* Sessions carry the cache directory and worker count. NULL = defaults. */
adlab_status adlab_session_new(adlab_session** out);
adlab_status adlab_session_set_cache_dir(adlab_session* s, const char* dir);
adlab_status adlab_session_set_threads(adlab_session* s, unsigned threads);
void adlab_session_free(adlab_session* s);

/* Generator-set operations. */
adlab_status adlab_enumerate_up_to(const adlab_genset* g,
                                   const char* bound_dec, char** out_json);
adlab_status adlab_contains(const adlab_genset* g, const char* n_dec,
                            int symmetric, int* out_member);
adlab_status adlab_residue_closure(const adlab_genset* g, uint64_t modulus,
                                   char** out_json);
adlab_status adlab_term_universe(const adlab_genset* g,
                                 const adlab_caps* caps, char** out_json);

/* Length engine. */
adlab_status adlab_is_representable(const adlab_session* s,
                                    const adlab_genset* g, const char* n_dec,
                                    unsigned h, const adlab_caps* caps,
                                    char** out_json);
/* Certificate-file form of the same search: an UPPER_WITNESS when a
 * representation with <= h terms exists, otherwise a CAP_CONDITIONAL
 * LOWER_EXHAUSTIVE record carrying the caps. */
adlab_status adlab_representable_record(const adlab_session* s,
                                        const adlab_genset* g,
                                        const char* n_dec, unsigned h,
                                        const adlab_caps* caps,
                                        char** out_json);
adlab_status adlab_length(const adlab_session* s, const adlab_genset* g,
                          const char* n_dec, unsigned h_max,
                          const adlab_caps* caps, char** out_json);
adlab_status adlab_metric_distance(const adlab_session* s,
                                   const adlab_genset* g, const char* x_dec,
                                   const char* y_dec, unsigned h_max,
                                   const adlab_caps* caps, char** out_json);
adlab_status adlab_ball(const adlab_session* s, const adlab_genset* g,
                        unsigned h, int64_t window, const adlab_caps* caps,
                        int include_witnesses, char** out_json);
adlab_status adlab_sphere(const adlab_session* s, const adlab_genset* g,
                          unsigned h, int64_t window, const adlab_caps* caps,
                          char** out_json);

/* Modular sieve. */
adlab_status adlab_delta(uint64_t n, char** out_json);
adlab_status adlab_delta_search(uint64_t max_n, unsigned top, char** out_json);
/* On ADLAB_ERR_BUDGET_EXHAUSTED, *out_json still carries diagnostics. */
adlab_status adlab_find_obstruction(const adlab_session* s,
                                    const adlab_genset* g, unsigned h,
                                    uint64_t max_n, unsigned max_q,
                                    uint64_t max_modulus, char** out_json);
adlab_status adlab_certify_lower(const char* certificate_file_json,
                                 const char* n_dec, char** out_json);

/* Lambda search. */
adlab_status adlab_lambda(const adlab_session* s, const adlab_genset* g,
                          unsigned h, const adlab_caps* caps, uint64_t n_max,
                          const char* evidence_dir, char** out_json);
adlab_status adlab_exclusion_table(const adlab_session* s,
                                   const adlab_genset* g, unsigned h,
                                   uint64_t range_max, const adlab_caps* caps,
                                   char** out_json);

/* Certificates. */
adlab_status adlab_verify_json(const char* certificate_file_json,
                               char** out_verdict_json);
adlab_status adlab_verify_file(const char* path, char** out_verdict_json);
adlab_status adlab_cache_gc(const adlab_session* s, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* ADLAB_H */
