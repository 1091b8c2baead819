/* C interface to the pucohom library.
 *
 * All state lives in an opaque context. Functions return a pch_status; on
 * any status other than PCH_OK or PCH_FALSIFIED, pch_last_error(ctx) holds a
 * message. Strings returned through `char** out` are owned by the caller and
 * released with pch_string_free. */

#ifndef PUCOHOM_H
#define PUCOHOM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pch_context pch_context;

typedef enum {
  PCH_OK = 0,
  PCH_FALSIFIED = 1,        /* a verification found a failing degree */
  PCH_INVALID_ARGUMENT = 2, /* bad parameter, unknown name, parse error */
  PCH_COMPUTE_ERROR = 3,    /* unexpected internal failure */
} pch_status;

typedef enum { PCH_FORMAT_TABLE = 0, PCH_FORMAT_CSV = 1 } pch_format;

typedef enum {
  PCH_PROFILE_GENERATED_SUBRING = 0, /* full iff (p^2 - p) divides d */
  PCH_PROFILE_THRESHOLD = 1,         /* full for every 2d >= 2(p^2 - p) */
} pch_profile_rule;

pch_status pch_context_new(pch_context** out);
void pch_context_free(pch_context* ctx);

/* Settings take effect for the next computation; changing the cache
 * directory or the worker count drops the in-memory results. */
pch_status pch_set_cache_dir(pch_context* ctx, const char* dir);
pch_status pch_set_workers(pch_context* ctx, unsigned workers);
pch_status pch_set_format(pch_context* ctx, pch_format format);
pch_status pch_set_profile_rule(pch_context* ctx, pch_profile_rule rule);

const char* pch_last_error(const pch_context* ctx);
void pch_string_free(char* s);

/* Saturated Z-basis of K_{n,degree}, one serialized polynomial per line, or
 * "(empty)". */
pch_status pch_k_basis(pch_context* ctx, int n, int degree, char** out);

/* target: main, vistoli, mui, dickson, theta-profile, integral, e4.
 * Uses p (n for e4). Returns PCH_FALSIFIED when a degree fails; the report
 * is written either way. */
pch_status pch_verify(pch_context* ctx, const char* target, int p, int n, int max_degree, char** out);

/* object: K (uses n), L, R, R0, quotient-main, quotient-vistoli (use p). */
pch_status pch_hilbert(pch_context* ctx, const char* object, int p, int n, int max_degree, char** out);

/* Theta_p of a polynomial written in s1..sp or t1..tp, e.g. "-1*s1^2 + 3*s2";
 * the result reads "5", "0" or "2*eta^6". */
pch_status pch_theta(pch_context* ctx, int p, const char* polynomial, char** out);

/* The discriminant prod_{i != j} (t_i - t_j) in s1..sn, over Z when p = 0
 * and reduced mod p otherwise. */
pch_status pch_delta(pch_context* ctx, int n, int p, char** out);

/* Minimal generators of K_n through max_degree: one line per degree,
 * "<degree>: <group type>: <representative>; ...". */
pch_status pch_k_generators(pch_context* ctx, int n, int max_degree, char** out);

#ifdef __cplusplus
}
#endif

#endif /* PUCOHOM_H */
