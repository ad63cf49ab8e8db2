#ifndef CARTIER_COVERS_H
#define CARTIER_COVERS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  /**
   * The curve admits no etale cover of the affine line.
   */
  CC_STATUS_NO_COVER = 1,
  /**
   * The proposed function is not an etale cover.
   */
  CC_STATUS_REJECTED = 2,
  /**
   * The requested degree is not realized by any cover.
   */
  CC_STATUS_NOT_ADMISSIBLE = 3,
  CC_STATUS_NULL_POINTER = 4,
  CC_STATUS_INVALID_UTF8 = 5,
  CC_STATUS_PARSE_ERROR = 6,
  /**
   * The model is not a smooth odd-degree hyperelliptic curve.
   */
  CC_STATUS_INVALID_CURVE = 7,
  CC_STATUS_INVALID_ARGUMENT = 8,
  CC_STATUS_PANIC = 9,
} CcStatus;

/**
 * Opaque curve handle.
 */
typedef struct CcCurve CcCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `y^2 = f(x)` over `F_{p^m}` and stores a new handle in `*out`.
 *
 * # Safety
 * `f` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CcStatus cc_curve_new(uint64_t p, uint32_t m, const char *f, struct CcCurve **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `curve` must come from [`cc_curve_new`] and not have been freed.
 */
void cc_curve_free(struct CcCurve *curve);

/**
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum CcStatus cc_curve_genus(const struct CcCurve *curve, uint32_t *out);

/**
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum CcStatus cc_cover_exists(const struct CcCurve *curve, bool *out);

/**
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum CcStatus cc_p_rank(const struct CcCurve *curve, uint32_t *out);

/**
 * Minimal cover degree; `CC_STATUS_NO_COVER` if none exists.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum CcStatus cc_minimal_degree(const struct CcCurve *curve, uint64_t *out);

/**
 * Cover certificate as JSON; `degree = 0` asks for the minimal cover.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum CcStatus cc_build_cover_json(const struct CcCurve *curve, uint64_t degree, char **out);

/**
 * Cartier matrix on `Omega(mP)`, `m <= 0`, with classification and p-rank, as JSON.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum CcStatus cc_cartier_matrix_json(const struct CcCurve *curve, int64_t m, char **out);

/**
 * Checks `t = a(x) + b(x) y`. On acceptance writes the degree to
 * `*degree_out` (which may be null); otherwise returns `CC_STATUS_REJECTED`.
 *
 * # Safety
 * `curve` must be a live handle; `a` and `b` NUL-terminated strings.
 */
enum CcStatus cc_verify_cover(const struct CcCurve *curve,
                              const char *a,
                              const char *b,
                              uint64_t *degree_out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cc_string_free(char *s);

/**
 * Message for the last failed call on this thread, or the empty string.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *cc_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *cc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARTIER_COVERS_H */
