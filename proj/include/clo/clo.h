/* C interface to the clique/coloring oracle-circuit workbench.
 *
 * Reports come back as heap-allocated JSON (or CSV) text; release every
 * returned string with clo_string_free and every bundle with
 * clo_bundle_free.  On a non-OK status, clo_last_error() describes the
 * failure for the calling thread.  Passing 0 for a numeric knob selects the
 * built-in default where one exists.
 */

#ifndef CLO_CLO_H
#define CLO_CLO_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct clo_bundle clo_bundle;

typedef enum clo_status {
  CLO_OK = 0,
  CLO_E_VERIFY_FAIL = 1, /* the circuit does not separate the test sets */
  CLO_E_INVALID = 2,     /* argument outside the supported domain */
  CLO_E_SCHEMA = 3,      /* malformed input document */
  CLO_E_SCALE = 4,       /* instance too large for exact enumeration */
  CLO_E_INTERNAL = 5,
  CLO_E_NULL = 6
} clo_status;

const char* clo_version(void);

/* Message for the last failing call on this thread; empty if none. */
const char* clo_last_error(void);

void clo_string_free(char* s);

/* Parses a circuit bundle, optionally with a separate rectangle-family
 * document when the bundle does not embed one. */
clo_status clo_bundle_parse(const char* bundle_json, const char* family_json,
                            clo_bundle** out);

/* name: "single", "triangle", "trivial-dnf" or "lex" (lex requires ell). */
clo_status clo_bundle_construct(const char* name, uint64_t n, uint64_t k,
                                uint64_t ell, clo_bundle** out);

/* Least ell in [2, k) whose lex construction has locality <= eps. */
clo_status clo_lex_ell_for_locality(uint64_t n, uint64_t k, const char* eps,
                                    uint64_t* out_ell);

void clo_bundle_free(clo_bundle* b);

clo_status clo_bundle_emit(const clo_bundle* b, char** out_json);

/* Checks the separation property over the full test sets.  Writes the
 * report even when the answer is negative (status CLO_E_VERIFY_FAIL). */
clo_status clo_verify(const clo_bundle* b, char** out_report);

clo_status clo_locality_exact(const clo_bundle* b, char** out_report);

clo_status clo_locality_mc(const clo_bundle* b, uint64_t samples, uint64_t seed,
                           uint32_t workers, char** out_report);

clo_status clo_max_overlap(const clo_bundle* b, char** out_report);

/* Rewrites a verified bundle as an OR over oracle subsets of size <= d. */
clo_status clo_normal_form(const clo_bundle* b, uint64_t d, char** out_report);

/* Approximates a verified bundle entry by entry.  ell/p default per (n, k)
 * when 0; m defaults to (p-1)^ell * ell! and is otherwise a decimal
 * string. */
clo_status clo_approximate(const clo_bundle* b, uint64_t d, uint64_t ell,
                           uint64_t p, const char* m, char** out_report);

/* Approximation error counts and bounds for an oracle-free bundle. */
clo_status clo_count_errors(const clo_bundle* b, uint64_t ell, uint64_t p,
                            const char* m, char** out_report);

/* Error measures of a flat (OR of indicator-AND-oracle) bundle; threshold
 * is a fraction such as "1/16" or NULL for the default. */
clo_status clo_dichotomy(const clo_bundle* b, const char* threshold,
                         char** out_report);

/* Size and locality of the three k = 3 reference constructions; eps is the
 * regime margin.  as_csv selects CSV output instead of JSON. */
clo_status clo_phase_report(uint64_t n, const char* eps, int as_csv,
                            char** out_report);

#ifdef __cplusplus
}
#endif

#endif
