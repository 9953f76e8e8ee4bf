#ifndef HERMLAB_H
#define HERMLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum HermlabStatus {
  HermlabStatus_Ok = 0,
  HermlabStatus_InvalidArgument = 1,
  HermlabStatus_ExceedsDeskScale = 2,
  HermlabStatus_NotStabilized = 3,
  HermlabStatus_Internal = 4,
} HermlabStatus;

/**
 * Opaque computation context for one prime power q = p^f.
 */
typedef struct HermlabCtx HermlabCtx;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a context for the odd prime power q = p^f. Returns null on error;
 * consult [`hermlab_last_error`].
 */
struct HermlabCtx *hermlab_ctx_new(uint64_t p, uint32_t f);

/**
 * Releases a context created by [`hermlab_ctx_new`].
 *
 * # Safety
 * `ctx` must be a pointer previously returned by [`hermlab_ctx_new`] and not
 * already freed.
 */
void hermlab_ctx_free(struct HermlabCtx *ctx);

/**
 * Releases a string returned by any computation in this library.
 *
 * # Safety
 * `s` must have been returned by this library and not already freed.
 */
void hermlab_string_free(char *s);

/**
 * The message of the most recent error on this thread, or null.
 */
const char *hermlab_last_error(void);

/**
 * alpha(A, B) as an exact rational string.
 *
 * # Safety
 * `ctx` must be a live context; `a_json`/`b_json` must be NUL-terminated;
 * `out` must be a valid destination pointer.
 */
enum HermlabStatus hermlab_alpha(const struct HermlabCtx *ctx,
                                 const char *a_json,
                                 const char *b_json,
                                 char **out);

/**
 * alpha'(A, B) = -d/dX alpha(A, B; X) at X = 1.
 *
 * # Safety
 * As for [`hermlab_alpha`].
 */
enum HermlabStatus hermlab_alpha_prime(const struct HermlabCtx *ctx,
                                       const char *a_json,
                                       const char *b_json,
                                       char **out);

/**
 * W_{h,t}(B, r) as an exact rational string.
 *
 * # Safety
 * As for [`hermlab_alpha`].
 */
enum HermlabStatus hermlab_weighted_w(const struct HermlabCtx *ctx,
                                      uintptr_t h,
                                      uintptr_t t,
                                      uint32_t r,
                                      const char *b_json,
                                      char **out);

/**
 * Number of overlattices of the lattice of B with Gram type lambda
 * (lambda passed as a comma-separated part list, e.g. "1,1").
 *
 * # Safety
 * As for [`hermlab_alpha`]; `lambda` must be NUL-terminated.
 */
enum HermlabStatus hermlab_count_by_type(const struct HermlabCtx *ctx,
                                         const char *b_json,
                                         const char *lambda,
                                         uint64_t *out);

/**
 * Both displayed forms of the intersection number for a 2n x 2n integral B.
 * Writes "lattice-value;density-value;agree" (density parts empty when
 * `with_density` is 0).
 *
 * # Safety
 * As for [`hermlab_alpha`].
 */
enum HermlabStatus hermlab_intersection_number(const struct HermlabCtx *ctx,
                                               uintptr_t n,
                                               const char *b_json,
                                               int32_t with_density,
                                               char **out);

/**
 * Runs a named verification suite; writes pass and fail counts.
 *
 * # Safety
 * `ctx` live, `name` NUL-terminated, `pass`/`fail` valid destinations.
 */
enum HermlabStatus hermlab_verify_suite(const struct HermlabCtx *ctx,
                                        const char *name,
                                        uint64_t *pass,
                                        uint64_t *fail);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HERMLAB_H */
