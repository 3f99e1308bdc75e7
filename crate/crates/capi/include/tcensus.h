/* C interface for the tcensus elliptic-curve counting library.
 *
 * Conventions:
 *   - Every fallible function returns a tc_status; TC_OK is 0.
 *   - Curves are opaque handles: create with tc_curve_new, release with
 *     tc_curve_free.
 *   - Integers that can exceed 64 bits (coefficients, heights) travel as
 *     decimal strings. Strings returned through char ** are owned by the
 *     caller and must be released with tc_string_free.
 *   - On error, tc_last_error() gives a thread-local message with details;
 *     the pointer stays valid until the next failing call on that thread.
 *
 * Link against the tcensus_capi cdylib or staticlib.
 */

#ifndef TCENSUS_H
#define TCENSUS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tc_status {
    TC_OK = 0,
    TC_ERR_NULL_ARG = 1,  /* a required pointer argument was NULL */
    TC_ERR_PARSE = 2,     /* a string argument failed to parse */
    TC_ERR_SINGULAR = 3,  /* 4A^3 + 27B^2 = 0 */
    TC_ERR_INVALID = 4,   /* invalid input rejected by the library */
    TC_ERR_INTERNAL = 5,  /* unexpected internal failure */
} tc_status;

/* Opaque handle for a curve y^2 = x^3 + Ax + B with integer A, B. */
typedef struct TcCurve TcCurve;

/* Message for the most recent error on this thread. Never NULL; empty if no
 * error has occurred. Do not free. */
const char *tc_last_error(void);

/* Library version as a static string. Do not free. */
const char *tc_version(void);

/* Release a string returned by this library. NULL is a no-op. */
void tc_string_free(char *s);

/* Create a curve from decimal coefficient strings; each value must fit in a
 * signed 128-bit integer. Fails with TC_ERR_SINGULAR for 4A^3 + 27B^2 = 0. */
tc_status tc_curve_new(const char *a_decimal, const char *b_decimal,
                       TcCurve **out);

/* Release a curve handle. NULL is a no-op. */
void tc_curve_free(TcCurve *c);

/* Coefficients and naive height max(|A|^3, B^2) as decimal strings the
 * caller frees. */
tc_status tc_curve_a(const TcCurve *c, char **out);
tc_status tc_curve_b(const TcCurve *c, char **out);
tc_status tc_curve_height(const TcCurve *c, char **out);

/* 1 if no prime p has p^4 | A and p^6 | B, 0 otherwise, -1 on error. */
int32_t tc_curve_is_minimal(const TcCurve *c);

/* Replace the curve in place by its minimal representative (divide out every
 * p^4 | A, p^6 | B). */
tc_status tc_curve_minimal_reduce(TcCurve *c);

/* Torsion subgroup of E(Q) as Z/n1 x Z/n2 with n1 | n2: a cyclic group Z/N
 * comes back as (1, N); the full 2-torsion families Z/2 x Z/N as (2, N).
 * Any output pointer may be NULL to skip that field. */
tc_status tc_curve_torsion(const TcCurve *c, uint32_t *n1, uint32_t *n2,
                           uint32_t *order);

/* All derived constants (quartic roots, boundary integrals, areas, zeta
 * values, c1/c2/c3 together with the printed decimals they are compared
 * against) as a JSON object string the caller frees. */
tc_status tc_constants_json(char **out);

/* Count minimal curves of naive height < X by torsion subgroup. max_height
 * is a decimal string. The result is a JSON object
 *   {"max_height", "total", "groups": [{"group", "exact", "contains"}...],
 *    "slopes": [...]}
 * the caller frees. "exact" partitions the census by the full torsion
 * subgroup; "contains" counts curves whose torsion contains the group.
 * Runtime grows like X^(5/6). */
tc_status tc_census_json(const char *max_height, char **out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TCENSUS_H */
