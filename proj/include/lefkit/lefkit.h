#ifndef LEFKIT_H
#define LEFKIT_H

/*
 * C interface to the lefkit core: builders for the factorization catalog,
 * boundary verification, invariant reports, spin decisions, substitutions
 * and derivation-script replay.
 *
 * Conventions:
 *  - factorizations are opaque handles, freed with lefkit_factorization_free;
 *  - structured payloads cross the boundary as JSON strings allocated by the
 *    library and freed with lefkit_string_free;
 *  - functions returning pointers return NULL on failure, functions
 *    returning lefkit_status return a nonzero code; either way
 *    lefkit_last_error() describes the most recent failure in this thread.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lefkit_factorization lefkit_factorization;

typedef enum {
    LEFKIT_OK = 0,
    LEFKIT_VERIFY_FAILED = 1,
    LEFKIT_USAGE_ERROR = 2,
    LEFKIT_INTERNAL_ERROR = 3
} lefkit_status;

const char* lefkit_version(void);

/* thread-local message for the most recent failure */
const char* lefkit_last_error(void);

void lefkit_string_free(char* s);
void lefkit_factorization_free(lefkit_factorization* f);

/* named curve registry of S_g^p as JSON */
char* lefkit_registry_json(int genus, int boundary);

/* JSON arrays of the supported family and script names */
char* lefkit_families(void);
char* lefkit_scripts(void);

/* catalog builders; params_json e.g. {"g":3,"i":1} (family-dependent keys
 * g, i, k, j) */
lefkit_factorization* lefkit_build(const char* family, const char* params_json);

/* (de)serialization */
lefkit_factorization* lefkit_from_json(const char* text);
char* lefkit_to_json(const lefkit_factorization* f);

/* surface and word data */
int lefkit_genus(const lefkit_factorization* f);
int lefkit_boundary(const lefkit_factorization* f);
int lefkit_letter_count(const lefkit_factorization* f);

/* boundary multi-twist verification; writes a JSON report when report_json
 * is non-NULL. compare_json may list letters to certify, as in
 * [{"pos":3,"name":"c_5"}], or be NULL. */
lefkit_status lefkit_verify(const lefkit_factorization* f, const char* compare_json,
                            char** report_json);

/* full invariant report (spin included for pencils); with_signature = 0
 * skips the Meyer accumulation */
char* lefkit_invariants(const lefkit_factorization* f, int with_signature);

/* spin verdict with witness/certificate */
char* lefkit_spin(const lefkit_factorization* f);

/* elementary moves */
lefkit_factorization* lefkit_hurwitz(const lefkit_factorization* f, int k, int to_the_left);
lefkit_factorization* lefkit_cyclic(const lefkit_factorization* f, int k);

/* substitution by a relator spec such as
 * {"kind":"chain","curves":["c_1","c_2","c_3"],"boundaries":["a","a'"]};
 * forward substitutions replace the relator's left side */
lefkit_factorization* lefkit_substitute(const lefkit_factorization* f, const char* relator_json,
                                        int pos, int forward, char** report_json);

/* derivation scripts: parameterized JSON source, and replay (log_json gets
 * the per-step record); depth <= 0 uses the default rewrite bound */
char* lefkit_script_json(const char* name, const char* params_json);
lefkit_status lefkit_replay(const char* name, const char* params_json, int depth, char** log_json);

/* acceptance-style family sweep; ranges_json e.g. {"g_min":3,"g_max":5};
 * as_table = 1 renders aligned text instead of JSON */
lefkit_status lefkit_check_family(const char* family, const char* ranges_json, int as_table,
                                  char** out);

/* the expected-value table (with citations) driving the sweeps */
char* lefkit_expected_json(const char* family, const char* ranges_json);

#ifdef __cplusplus
}
#endif

#endif
