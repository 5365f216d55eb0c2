#ifndef QDFRAC_H
#define QDFRAC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * E1 evaluation method selector for `qdfrac_e1`.
 */
#define QDFRAC_E1_SERIES 0

#define QDFRAC_E1_CF 1

#define QDFRAC_E1_QUADRATURE 2

/**
 * Result of every fallible call.
 */
typedef enum {
  QDFRAC_STATUS_OK = 0,
  /**
   * A pointer was null, a string was not UTF-8, or a value was out of range.
   */
  QDFRAC_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The output buffer is too small for the result.
   */
  QDFRAC_STATUS_BUFFER_TOO_SMALL = 2,
  /**
   * Quotient-difference breakdown (vanishing Hankel determinant).
   */
  QDFRAC_STATUS_BREAKDOWN = 3,
  /**
   * The continued fraction did not stabilize below the depth cap.
   */
  QDFRAC_STATUS_NO_CONVERGENCE = 4,
  /**
   * An iteration subtraction lost all significant bits.
   */
  QDFRAC_STATUS_PRECISION_EXHAUSTED = 5,
  /**
   * The argument is outside the supported domain (x > 0).
   */
  QDFRAC_STATUS_DOMAIN_ERROR = 6,
  /**
   * The curve file did not parse.
   */
  QDFRAC_STATUS_PARSE_ERROR = 7,
  /**
   * The curve has discriminant zero.
   */
  QDFRAC_STATUS_SINGULAR_CURVE = 8,
  /**
   * A prime exceeded the point-counting cap.
   */
  QDFRAC_STATUS_PRIME_TOO_LARGE = 9,
  /**
   * The derivative formula requires functional-equation sign -1.
   */
  QDFRAC_STATUS_EVEN_SIGN = 10,
  /**
   * An exact identity failed (engine defect; should never happen).
   */
  QDFRAC_STATUS_IDENTITY_FAILURE = 11,
  /**
   * A panic was caught at the boundary.
   */
  QDFRAC_STATUS_INTERNAL_ERROR = 12,
} QdfracStatus;

/**
 * Opaque elliptic-curve handle created by `qdfrac_curve_load`.
 */
typedef struct QdfracCurve QdfracCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qdfrac_version(void);

/**
 * Continued-fraction coefficients d_0 ... d_2k of the factorial series,
 * space-separated rationals.
 */
QdfracStatus qdfrac_cf_coeffs(uintptr_t k, char *buf, uintptr_t buf_len);

/**
 * Hankel determinant H_k^(n) of the factorial series as a `p/q` string.
 */
QdfracStatus qdfrac_hankel_det(int64_t n, uintptr_t k, char *buf, uintptr_t buf_len);

/**
 * Runs the exact identity sweep up to `kmax`; Ok when everything holds.
 */
QdfracStatus qdfrac_identities(uintptr_t kmax);

/**
 * Evaluates E1(x) with the chosen method; writes the decimal value.
 * `x` is an integer, decimal, or `p/q` literal.
 */
QdfracStatus qdfrac_e1(int method, const char *x, uint32_t prec_bits, char *buf, uintptr_t buf_len);

/**
 * Loads a curve file and hands back an owned opaque handle.
 */
QdfracStatus qdfrac_curve_load(const char *path, QdfracCurve **out);

/**
 * Frees a handle from `qdfrac_curve_load`. Null is a no-op.
 */
void qdfrac_curve_free(QdfracCurve *curve);

/**
 * Curve label, NUL-terminated.
 */
QdfracStatus qdfrac_curve_label(const QdfracCurve *curve, char *buf, uintptr_t buf_len);

/**
 * Fourier coefficient a_p at a prime p (point count).
 */
QdfracStatus qdfrac_curve_ap(const QdfracCurve *curve, uint64_t p, int64_t *out);

/**
 * Fills `out[0..upper]` with a_1 ... a_upper. `out_len` must be >= upper.
 */
QdfracStatus qdfrac_curve_an(const QdfracCurve *curve,
                             uintptr_t upper,
                             int64_t *out,
                             uintptr_t out_len);

/**
 * L'(E, 1) truncated at `terms`; writes the value and the tail envelope
 * as decimal strings.
 */
QdfracStatus qdfrac_lprime(const QdfracCurve *curve,
                           uintptr_t terms,
                           uint32_t prec_bits,
                           char *value_buf,
                           uintptr_t value_len,
                           char *tail_buf,
                           uintptr_t tail_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDFRAC_H */
