#ifndef MULTISEG_H
#define MULTISEG_H

/* Generated by cbindgen from the multiseg-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Route selector for [`ms_derive_json`].
 */
typedef enum MsRoute {
  MS_ROUTE_QUANTUM = 0,
  MS_ROUTE_BASIS_CHANGE = 1,
  MS_ROUTE_PARABOLIC_THETA = 2,
  /**
   * Every route, with an agreement check.
   */
  MS_ROUTE_ALL = 3,
} MsRoute;

/**
 * Status codes. Nonzero values match the CLI exit codes where they overlap.
 */
typedef enum MsStatus {
  MS_STATUS_OK = 0,
  MS_STATUS_INTERNAL = 1,
  MS_STATUS_PARSE = 2,
  MS_STATUS_PRECONDITION = 3,
  MS_STATUS_NULL_POINTER = 4,
  MS_STATUS_INVALID_UTF8 = 5,
  /**
   * Routes computed different answers.
   */
  MS_STATUS_DISAGREEMENT = 6,
} MsStatus;

/**
 * Opaque engine handle.
 */
typedef struct MsEngine MsEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * A new engine without persistent cache. Never returns null.
 */
struct MsEngine *ms_engine_new(void);

/**
 * A new engine backed by the cache directory `dir`; null if `dir` is null
 * or not UTF-8.
 *
 * # Safety
 * `dir` must be null or a NUL-terminated string.
 */
struct MsEngine *ms_engine_with_cache(const char *dir);

/**
 * Persists cached tables, if the engine has a cache directory.
 *
 * # Safety
 * `e` must be null or a handle from this library.
 */
enum MsStatus ms_engine_flush(const struct MsEngine *e);

/**
 * Releases an engine. Null is ignored.
 *
 * # Safety
 * `e` must be null or a handle from this library not yet freed.
 */
void ms_engine_free(struct MsEngine *e);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ms_string_free(char *s);

/**
 * The message of the last failure on this thread; empty if none. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *ms_last_error(void);

/**
 * Canonical form of a multisegment.
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MsStatus ms_canonicalize(const char *input, char **out);

/**
 * `b ≤ a`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MsStatus ms_leq(const struct MsEngine *e, const char *b, const char *a, bool *out);

/**
 * `b ⪯_k a`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MsStatus ms_prec_k(const struct MsEngine *e,
                        const char *b,
                        const char *a,
                        int32_t k,
                        bool *out);

/**
 * `m(b, a)`: the multiplicity of `L_b` in `π(a)`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MsStatus ms_multiplicity(const struct MsEngine *e, const char *b, const char *a, int64_t *out);

/**
 * `P_{x,y}(q)` as a coefficient list, lowest degree first, written into
 * `coeffs` (capacity `cap`). `len` receives the number of coefficients;
 * if it exceeds `cap` only the first `cap` are written.
 *
 * # Safety
 * `x`, `y` NUL-terminated one-line permutations such as "2 1 3"; `coeffs`
 * valid for `cap` writes (or null when `cap` is 0); `len` valid.
 */
enum MsStatus ms_kl_poly(const struct MsEngine *e,
                         const char *x,
                         const char *y,
                         int64_t *coeffs,
                         uintptr_t cap,
                         uintptr_t *len);

/**
 * `𝒟^k(L_a)` as JSON `{"input", "k", "basis", "terms": [{"coeff", "ms"}],
 * "route", "agreement"}`. With [`MsRoute::All`] a disagreement still
 * writes the JSON and returns [`MsStatus::Disagreement`].
 *
 * # Safety
 * Pointers must be valid; `a` NUL-terminated.
 */
enum MsStatus ms_derive_json(const struct MsEngine *e,
                             const char *a,
                             int32_t k,
                             enum MsRoute route,
                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTISEG_H */
