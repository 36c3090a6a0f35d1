#ifndef STARLIKE_H
#define STARLIKE_H

/* Generated by cbindgen from the starlike-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Coefficient family selector for [`sl_series_new`].
 */
#define SL_COEFF_EPS 0

/**
 * Rearranged-form coefficients.
 */
#define SL_COEFF_DELTA 1

/**
 * Squared-radius coefficients of the second family.
 */
#define SL_COEFF_RHO 2

/**
 * Radius coefficients of the second family.
 */
#define SL_COEFF_PI 3

/**
 * Radius selector: first normalised family.
 */
#define SL_RADIUS_PHI 0

/**
 * Radius selector: second family, squared radius.
 */
#define SL_RADIUS_VARPHI_SQ 1

/**
 * Radius selector: second family.
 */
#define SL_RADIUS_VARPHI 2

/**
 * Status code returned by every fallible function.
 */
typedef enum {
  /**
   * Success.
   */
  SL_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SL_STATUS_NULL_POINTER = 1,
  /**
   * An argument failed to parse or was out of range.
   */
  SL_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A mathematical precondition was violated (pole, sign, region).
   */
  SL_STATUS_DOMAIN = 3,
  /**
   * The numerical machinery failed (no sign change, no convergence).
   */
  SL_STATUS_NUMERICAL = 4,
  /**
   * An internal invariant was violated.
   */
  SL_STATUS_INTERNAL = 5,
} SlStatus;

/**
 * An expansion-coefficient table; opaque to C.
 */
typedef struct SlSeries SlSeries;

/**
 * Library version as a static string; do not free.
 */
const char *sl_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be a pointer previously returned through an out-parameter
 * of this library and not freed yet.
 */
void sl_string_free(char *s);

/**
 * Computes a coefficient family through order `count` and hands back
 * an owned table.
 *
 * # Safety
 * `out` must be a valid pointer; on success it receives a table that
 * must be released with [`sl_series_free`].
 */
SlStatus sl_series_new(uint32_t family, uint32_t count, SlSeries **out);

/**
 * Number of coefficients held by the table (0 for null).
 *
 * # Safety
 * `series` must be null or a live pointer from [`sl_series_new`].
 */
uint32_t sl_series_order(const SlSeries *series);

/**
 * The `k`-th coefficient (1-based) as an exact `"p/q"` string.
 *
 * # Safety
 * `series` must be a live pointer from [`sl_series_new`]; `out` must
 * be valid. The string must be released with [`sl_string_free`].
 */
SlStatus sl_series_coeff(const SlSeries *series, uint32_t k, char **out);

/**
 * Releases a coefficient table. Null is ignored.
 *
 * # Safety
 * `series` must be null or an unreleased pointer from [`sl_series_new`].
 */
void sl_series_free(SlSeries *series);

/**
 * Laurent coefficient of the order-`k` Rayleigh sum, index `m`, as an
 * exact `"p/q"` string.
 *
 * # Safety
 * `out` must be valid; release the string with [`sl_string_free`].
 */
SlStatus sl_sigma_coeff(uint32_t k, uint32_t m, char **out);

/**
 * Exact Rayleigh sum of order `k` at `nu`, as an exact `"p/q"` string.
 *
 * # Safety
 * `nu` must be a NUL-terminated string; `out` must be valid; release
 * the string with [`sl_string_free`].
 */
SlStatus sl_rayleigh_sum(uint32_t k, const char *nu, char **out);

/**
 * Truncated expansion of the selected radius quantity at `nu` with
 * `order` series terms, rendered at the precision-implied digit count.
 *
 * # Safety
 * `nu` must be a NUL-terminated string; `out` must be valid; release
 * the string with [`sl_string_free`].
 */
SlStatus sl_radius_asymptotic(uint32_t family,
                              const char *nu,
                              uint32_t order,
                              uint32_t prec,
                              char **out);

/**
 * Radius located numerically at `prec` bits, as a decimal string. The
 * squared-family selector reports the square of the located root.
 *
 * # Safety
 * `nu` must be a NUL-terminated string; `out` must be valid; release
 * the string with [`sl_string_free`].
 */
SlStatus sl_radius_numeric(uint32_t family, const char *nu, uint32_t prec, char **out);

/**
 * The `n`-th positive Bessel zero of order `nu` at `prec` bits, as a
 * decimal string.
 *
 * # Safety
 * `nu` must be a NUL-terminated string; `out` must be valid; release
 * the string with [`sl_string_free`].
 */
SlStatus sl_bessel_zero(const char *nu, uint32_t n, uint32_t prec, char **out);

#endif  /* STARLIKE_H */
