/* slopekit — exact zeta-function arithmetic for curves y^(p^u) - y = f(x)
 * over F_(p^s): L-polynomials, Newton polygons, slope bounds, digit-sum
 * tilings and power-series verification, exposed as a C shared library.
 *
 * Conventions
 *   - Every function that produces output reports an sk_status; SK_OK means
 *     the computation ran (a verification that ran and found a violating
 *     witness still returns SK_OK — read the record's "ok" field, e.g. via
 *     sk_record_ok).
 *   - On any non-OK status the output pointer is left NULL and
 *     sk_last_error() holds a human-readable message for the calling thread.
 *   - Strings returned through char** are heap-allocated JSON documents with
 *     fixed key order and no run-varying fields (big integers are decimal
 *     strings, rationals are "a/b"); release them with sk_string_free.
 *   - budget caps enumeration work (number of field elements examined);
 *     pass 0 for the built-in default.  nthreads <= 0 picks a default.
 */
#ifndef SLOPEKIT_H
#define SLOPEKIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SK_OK = 0,
    SK_ERR_INVALID_ARGUMENT = 1, /* arguments outside the documented domain */
    SK_ERR_PARSE = 2,            /* malformed curve/family text */
    SK_ERR_BUDGET = 3,           /* work cap exceeded before completion */
    SK_ERR_UNSUPPORTED = 4,      /* valid input outside the implemented range */
    SK_ERR_INCONSISTENCY = 5,    /* internal cross-check failed */
    SK_ERR_INTERNAL = 6          /* unexpected failure (allocation, ...) */
} sk_status;

/* Opaque parsed curve y^(p^u) - y = f(x) over F_(p^s). */
typedef struct sk_curve sk_curve;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* sk_version(void);

/* Message for the most recent failure on this thread ("" when none).
 * Static storage; valid until the next slopekit call on the thread. */
const char* sk_last_error(void);

/* Release a string returned through a char** parameter. NULL is a no-op. */
void sk_string_free(char* s);

/* Parse "p=2 u=1 s=1 f=1*x^3+1*x^1" (see README for the grammar).  Parse
 * errors name the offending column in sk_last_error(). */
sk_status sk_curve_parse(const char* text, sk_curve** out);
void sk_curve_free(sk_curve* c);

/* Canonical text form of a parsed curve (round-trips through parse). */
sk_status sk_curve_canonical(const sk_curve* c, char** out);

/* L-polynomial of the curve plus Newton slopes and verdicts.  verify != 0
 * recomputes with the slower independent counter and cross-checks. */
sk_status sk_lpoly_json(const sk_curve* c, int verify, uint64_t budget,
                        int nthreads, char** out);

/* Newton polygon (vertices, slopes with multiplicity) of the L-polynomial. */
sk_status sk_newton_json(const sk_curve* c, uint64_t budget, int nthreads,
                         char** out);

/* Full verdict pipeline: L-polynomial, slopes, family classification and
 * every slope/divisibility verdict; "ok" is their conjunction. */
sk_status sk_check_json(const sk_curve* c, int verify, uint64_t budget,
                        int nthreads, char** out);

/* Genus, tau, divisibility exponent and the improved Hasse-Weil bound for
 * the (p, s, u, d) family at extension degree n. */
sk_status sk_bounds_json(uint32_t p, uint32_t s, uint32_t u, uint64_t d,
                         uint64_t n, char** out);

/* The three built-in reference bound computations, value by value, each
 * with status PASS or FLAG (FLAG = computed and reference disagree). */
sk_status sk_examples_json(char** out);

/* Minimal tiling weight s~_p(r, S) with the optimal tilings; when d > 0 the
 * minimal constrained partitions and the bijection check are included. */
sk_status sk_tiling_json(uint64_t r, const uint32_t* S, uint64_t S_len,
                         uint32_t p, uint32_t d, char** out);

/* Power-series verification grids.  selector: y, D, E, C, rel, cmod, all. */
sk_status sk_series_verify_json(const char* selector, char** out);

/* Deterministic list of random curves drawn from a family description like
 * "p=2,3,5 u=1,2 s=1,2 dmax=9", restricted to configurations whose full
 * point-count run fits the budget. */
sk_status sk_sweep_plan_json(const char* family, uint64_t seed,
                             uint64_t count, uint64_t budget, char** out);

/* 1 when json_text is a record whose top-level "ok" is true, else 0. */
int sk_record_ok(const char* json_text);

#ifdef __cplusplus
}
#endif

#endif /* SLOPEKIT_H */
