#ifndef XNPR_H
#define XNPR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum XnprStatus {
  /**
   * Success; out-parameters are populated.
   */
  XNPR_STATUS_OK = 0,
  /**
   * A parameter was rejected (non-prime p, p | N, bad label, bad UTF-8…).
   */
  XNPR_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The computation itself has no defined answer here.
   */
  XNPR_STATUS_MATH_DOMAIN = 2,
  /**
   * A required pointer was NULL.
   */
  XNPR_STATUS_NULL_POINTER = 3,
  /**
   * The requested value is not available (e.g. no certificate family
   * is known for p^r <= 3, so no lower bound exists).
   */
  XNPR_STATUS_UNAVAILABLE = 4,
  /**
   * An internal invariant failed; the library caught a panic.
   */
  XNPR_STATUS_PANIC = 5,
} XnprStatus;

/**
 * Opaque result of an exponent computation.
 */
typedef struct XnprExponent XnprExponent;

/**
 * Opaque exact rational matrix.
 */
typedef struct XnprMatrix XnprMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned by one of the
 * string-producing functions of this library, not yet freed.
 */
void xnpr_string_free(char *s);

/**
 * A copy of the message of the most recent error on this thread, or NULL
 * when the last call succeeded. Free with [`xnpr_string_free`].
 */
char *xnpr_last_error_message(void);

/**
 * The library version as a static string. Do not free.
 */
const char *xnpr_version(void);

/**
 * Computes the annihilating exponent for (p, r, N, k) and hands back an
 * opaque report. Free with [`xnpr_exponent_free`].
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum XnprStatus xnpr_exponent_compute(uint64_t p,
                                      uint32_t r,
                                      uint64_t n,
                                      uint64_t k,
                                      struct XnprExponent **out);

/**
 * Frees an exponent handle. NULL is ignored.
 *
 * # Safety
 * `handle` must be NULL or a pointer from [`xnpr_exponent_compute`], not
 * yet freed.
 */
void xnpr_exponent_free(struct XnprExponent *handle);

/**
 * The proven upper bound 2k·p^(r-1)·(pr-r+1).
 *
 * # Safety
 * `handle` must be a live pointer from [`xnpr_exponent_compute`]; `out`
 * must point to writable storage for one int64_t.
 */
enum XnprStatus xnpr_exponent_upper(const struct XnprExponent *handle, int64_t *out);

/**
 * The certified lower bound, when a certificate family is known
 * (`XNPR_STATUS_UNAVAILABLE` otherwise).
 *
 * # Safety
 * Same contract as [`xnpr_exponent_upper`].
 */
enum XnprStatus xnpr_exponent_lower(const struct XnprExponent *handle, int64_t *out);

/**
 * The exact exponent, when the two bounds meet
 * (`XNPR_STATUS_UNAVAILABLE` otherwise).
 *
 * # Safety
 * Same contract as [`xnpr_exponent_upper`].
 */
enum XnprStatus xnpr_exponent_exact(const struct XnprExponent *handle, int64_t *out);

/**
 * The full report as a deterministic JSON string. Free with
 * [`xnpr_string_free`].
 *
 * # Safety
 * `handle` must be a live pointer from [`xnpr_exponent_compute`]; `out`
 * must point to writable storage for one pointer.
 */
enum XnprStatus xnpr_exponent_to_json(const struct XnprExponent *handle, char **out);

/**
 * Builds the intersection matrix `"M"`, its truncation `"T"`, or the
 * closed-form inverse `"Tinv"` for (p, r). Free with [`xnpr_matrix_free`].
 *
 * # Safety
 * `which` must be NULL-terminated; `out` must point to writable storage
 * for one pointer.
 */
enum XnprStatus xnpr_matrix_compute(uint64_t p,
                                    uint32_t r,
                                    const char *which,
                                    struct XnprMatrix **out);

/**
 * Frees a matrix handle. NULL is ignored.
 *
 * # Safety
 * `handle` must be NULL or a pointer from [`xnpr_matrix_compute`], not
 * yet freed.
 */
void xnpr_matrix_free(struct XnprMatrix *handle);

/**
 * Number of rows; 0 for NULL.
 *
 * # Safety
 * `handle` must be NULL or a live pointer from [`xnpr_matrix_compute`].
 */
uintptr_t xnpr_matrix_rows(const struct XnprMatrix *handle);

/**
 * Number of columns; 0 for NULL.
 *
 * # Safety
 * `handle` must be NULL or a live pointer from [`xnpr_matrix_compute`].
 */
uintptr_t xnpr_matrix_cols(const struct XnprMatrix *handle);

/**
 * Entry (i, j), 0-based, rendered exactly as `"num/den"` (or a plain
 * integer). Free with [`xnpr_string_free`].
 *
 * # Safety
 * `handle` must be a live pointer from [`xnpr_matrix_compute`]; `out`
 * must point to writable storage for one pointer.
 */
enum XnprStatus xnpr_matrix_entry(const struct XnprMatrix *handle,
                                  uintptr_t i,
                                  uintptr_t j,
                                  char **out);

/**
 * Valuation at the cusp 0 of the Klein-form product at level p^r, for the
 * coefficient table `family` ("t:m,t:m,…"), or for the standard family
 * when `family` is NULL.
 *
 * # Safety
 * `family` must be NULL or NUL-terminated; `out` must point to writable
 * storage for one int64_t.
 */
enum XnprStatus xnpr_klein_valuation(uint64_t p, uint32_t r, const char *family, int64_t *out);

/**
 * q-expansion at infinity of the Klein-form product, as the JSON
 * serialization of the series (exact rational coefficients). `family` as
 * in [`xnpr_klein_valuation`]. Free with [`xnpr_string_free`].
 *
 * # Safety
 * `family` must be NULL or NUL-terminated; `out` must point to writable
 * storage for one pointer.
 */
enum XnprStatus xnpr_klein_qexp_json(uint64_t p,
                                     uint32_t r,
                                     const char *family,
                                     uintptr_t trunc,
                                     char **out);

/**
 * Runs a verification suite ("all", "arith", "linalg", "xcurve" or
 * "klein"). `passed` receives the conjunction of all checks;
 * `report_json` (optional, may be NULL) receives the full deterministic
 * JSON report, freed with [`xnpr_string_free`].
 *
 * # Safety
 * `suite` must be NUL-terminated; `passed` must point to writable storage
 * for one bool; `report_json` must be NULL or point to writable storage
 * for one pointer.
 */
enum XnprStatus xnpr_verify(const char *suite, bool *passed, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XNPR_H */
