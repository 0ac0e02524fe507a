/* C interface for the xsign sign-classification engine. Generated by cbindgen. */

#ifndef XSIGN_H
#define XSIGN_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of an FFI call.
 */
typedef enum XsignStatus {
  XsignStatus_Ok = 0,
  XsignStatus_NullPointer = 1,
  XsignStatus_DomainError = 2,
  XsignStatus_PreconditionError = 3,
  XsignStatus_ParseError = 4,
  XsignStatus_CertificationFailure = 5,
  XsignStatus_InvalidUtf8 = 6,
} XsignStatus;

/**
 * Opaque certificate handle.
 */
typedef struct XsignCertificate XsignCertificate;

/**
 * One evaluated row.
 */
typedef struct XsignEvalRow {
  uint64_t n;
  uint64_t z;
  uint64_t m;
  uint32_t r;
  int64_t x;
} XsignEvalRow;

/**
 * Zeros and extrema of `x` over a scanned range. `zeros` holds the first
 * `min(zero_count, 8)` zero positions in ascending order.
 */
typedef struct XsignScanSummary {
  uint64_t lo;
  uint64_t hi;
  uint64_t zero_count;
  uint64_t zeros[8];
  uint64_t min_at;
  int64_t min_value;
  uint64_t max_at;
  int64_t max_value;
  bool has_last_nonpositive;
  uint64_t last_nonpositive;
} XsignScanSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Detail text for the most recent failure on this thread, or NULL if the
 * last call succeeded. The pointer stays valid until the next failing call
 * on the same thread; do not free it.
 */
const char *xsign_last_error_message(void);

/**
 * Library version as a static string; do not free.
 */
const char *xsign_version(void);

/**
 * Evaluate z, m, r and x at `n` (word tier: `1 <= n <= 2^62`).
 *
 * # Safety
 * `out` must be a valid pointer to an `XsignEvalRow`.
 */
enum XsignStatus xsign_eval_row(uint64_t n, struct XsignEvalRow *out);

/**
 * `x(n)`, exact.
 *
 * # Safety
 * `out` must be a valid pointer to an `int64_t`.
 */
enum XsignStatus xsign_x(uint64_t n, int64_t *out);

/**
 * Sign of `x(n)` as -1, 0 or 1.
 *
 * # Safety
 * `out` must be a valid pointer to an `int32_t`.
 */
enum XsignStatus xsign_sign(uint64_t n, int32_t *out);

/**
 * Exhaustive scan of `[lo, hi]`; ties in the extrema break toward the
 * smallest index.
 *
 * # Safety
 * `out` must be a valid pointer to an `XsignScanSummary`.
 */
enum XsignStatus xsign_scan_summary(uint64_t lo, uint64_t hi, struct XsignScanSummary *out);

/**
 * Witness that `x` exceeds `bound` (a decimal string of any size): writes
 * `n` and `x(n)` as newly allocated decimal strings. Free both with
 * `xsign_string_free`.
 *
 * # Safety
 * `bound` must be a NUL-terminated string; `n_out` and `x_out` must be
 * valid pointers.
 */
enum XsignStatus xsign_exceed(const char *bound, char **n_out, char **x_out);

/**
 * Build a certificate with exact tail margins up to `tail_s_max`
 * (must be at least 12). On success writes an owned handle; free it with
 * `xsign_certificate_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum XsignStatus xsign_certificate_build(uint64_t tail_s_max, struct XsignCertificate **out);

/**
 * Parse a certificate from its JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum XsignStatus xsign_certificate_parse(const char *json, struct XsignCertificate **out);

/**
 * Serialize a certificate to its JSON document as a newly allocated
 * string; free it with `xsign_string_free`.
 *
 * # Safety
 * `cert` must be a handle from `xsign_certificate_build`/`_parse`;
 * `out` must be a valid pointer.
 */
enum XsignStatus xsign_certificate_to_json(const struct XsignCertificate *cert, char **out);

/**
 * Re-verify every claim in the certificate. Returns `Ok` when the
 * certificate is sound; `CertificationFailure` (with detail via
 * `xsign_last_error_message`) when any re-derivation fails.
 *
 * # Safety
 * `cert` must be a handle from `xsign_certificate_build`/`_parse`.
 */
enum XsignStatus xsign_certificate_check(const struct XsignCertificate *cert);

/**
 * Number of segments in the certificate (0 for a null handle).
 *
 * # Safety
 * `cert` must be null or a handle from `xsign_certificate_build`/`_parse`.
 */
uintptr_t xsign_certificate_segment_count(const struct XsignCertificate *cert);

/**
 * Release a certificate handle. Null is a no-op.
 *
 * # Safety
 * `cert` must be null or an unreleased handle from
 * `xsign_certificate_build`/`_parse`.
 */
void xsign_certificate_free(struct XsignCertificate *cert);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or an unreleased string returned by this library.
 */
void xsign_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XSIGN_H */
