#ifndef BOHR_H
#define BOHR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BohrStatus {
  BOHR_STATUS_OK = 0,
  BOHR_STATUS_NULL_POINTER = 1,
  BOHR_STATUS_DOMAIN = 2,
  BOHR_STATUS_UNSUPPORTED = 3,
  BOHR_STATUS_NON_FINITE = 4,
  BOHR_STATUS_EVALUATION = 5,
  BOHR_STATUS_NO_SIGN_CHANGE = 6,
  BOHR_STATUS_PARSE = 7,
  BOHR_STATUS_PANIC = 8,
} BohrStatus;

typedef enum BohrCatalog {
  BOHR_CATALOG_KOEBE = 0,
  BOHR_CATALOG_KOEBE_NEG = 1,
  BOHR_CATALOG_HALF_PLANE = 2,
  // parameter: lambda
  BOHR_CATALOG_U_LAMBDA = 3,
  // parameter: K; the analytic part is returned
  BOHR_CATALOG_HARMONIC_P = 4,
  // parameter: K; the analytic part is returned
  BOHR_CATALOG_HARMONIC_Q = 5,
  // parameter: lambda
  BOHR_CATALOG_F_LAMBDA = 6,
} BohrCatalog;

typedef enum BohrFamily {
  BOHR_FAMILY_QC_UNIVALENT = 0,
  BOHR_FAMILY_QC_CONVEX = 1,
  BOHR_FAMILY_QC_BOUNDED = 2,
  BOHR_FAMILY_LOCALLY_UNIVALENT = 3,
  BOHR_FAMILY_LOG_S = 4,
  BOHR_FAMILY_LOG_INVERSE = 5,
  BOHR_FAMILY_LOG_CONVEX = 6,
  BOHR_FAMILY_LOG_U = 7,
} BohrFamily;

typedef enum BohrTheorem {
  // parameter: K
  BOHR_THEOREM_QC_UNIVALENT = 0,
  // parameter: K
  BOHR_THEOREM_QC_CONVEX = 1,
  // parameter: K
  BOHR_THEOREM_QC_BOUNDED = 2,
  // parameter: lambda
  BOHR_THEOREM_LOCALLY_UNIVALENT = 3,
  BOHR_THEOREM_LOG_UNIVALENT = 4,
  BOHR_THEOREM_LOG_INVERSE = 5,
  BOHR_THEOREM_LOG_CONVEX = 6,
  // parameter: lambda
  BOHR_THEOREM_LOG_U = 7,
} BohrTheorem;

// Opaque radius with its certificate.
typedef struct BohrRadius BohrRadius;

// Opaque sharpness or holds report.
typedef struct BohrReport BohrReport;

// Opaque truncated power series.
typedef struct BohrSeries BohrSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Length in bytes of the last error message on this thread, without the terminator.
uintptr_t bohr_last_error_length(void);

// Copies the last error message (NUL-terminated, truncated to fit) into `buf`.
// Returns the number of bytes written, excluding the terminator.
//
// # Safety
// `buf` must point to `len` writable bytes.
uintptr_t bohr_last_error_message(char *buf, uintptr_t len);

// Series with coefficients `re[n] + i im[n]`, `n < len`; `im` may be null.
//
// # Safety
// `re` (and `im` when non-null) must point to `len` readable doubles.
enum BohrStatus bohr_series_new(const double *re,
                                const double *im,
                                uintptr_t len,
                                struct BohrSeries **out);

// Catalog function truncated at `order`.
//
// # Safety
// `out` must be a valid pointer.
enum BohrStatus bohr_series_catalog(enum BohrCatalog tag,
                                    double param,
                                    uintptr_t order,
                                    struct BohrSeries **out);

// # Safety
// `s` must be null or a handle returned by this library, not yet freed.
void bohr_series_free(struct BohrSeries *s);

// Truncation order, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
uintptr_t bohr_series_order(const struct BohrSeries *s);

// # Safety
// `s` must be a live handle; `re` and `im` must be valid pointers.
enum BohrStatus bohr_series_coeff(const struct BohrSeries *s, uintptr_t n, double *re, double *im);

// # Safety
// Handles must be live; `out` must be valid.
enum BohrStatus bohr_series_mul(const struct BohrSeries *a,
                                const struct BohrSeries *b,
                                struct BohrSeries **out);

// `outer(inner(z))`; `inner` must vanish at the origin.
//
// # Safety
// Handles must be live; `out` must be valid.
enum BohrStatus bohr_series_compose(const struct BohrSeries *outer,
                                    const struct BohrSeries *inner,
                                    struct BohrSeries **out);

// Compositional inverse of `a_1 z + ...` with `a_1 != 0`.
//
// # Safety
// `s` must be live; `out` must be valid.
enum BohrStatus bohr_series_revert(const struct BohrSeries *s, struct BohrSeries **out);

// `log(f(z)/z) = 2 sum gamma_n z^n` as a series.
//
// # Safety
// `s` must be live; `out` must be valid.
enum BohrStatus bohr_series_log_over_z(const struct BohrSeries *s, struct BohrSeries **out);

// `sum |a_n| r^n`, from `n = 0` when `include_constant` is true.
//
// # Safety
// `s` must be live; `out` must be valid.
enum BohrStatus bohr_series_bohr_sum(const struct BohrSeries *s,
                                     double r,
                                     bool include_constant,
                                     double *out);

// `2 sum |gamma_n| r^n`.
//
// # Safety
// `s` must be live; `out` must be valid.
enum BohrStatus bohr_series_log_bohr_sum(const struct BohrSeries *s, double r, double *out);

// Bohr radius of `family`; `big_k` and `lambda` are ignored where irrelevant.
//
// # Safety
// `out` must be valid.
enum BohrStatus bohr_radius(enum BohrFamily family,
                            double big_k,
                            double lambda,
                            struct BohrRadius **out);

// Threshold parameter `lambda_0` of the `U(lambda)` sharpness range.
//
// # Safety
// `out` must be valid.
enum BohrStatus bohr_lambda0(struct BohrRadius **out);

// # Safety
// `r` must be null or a live handle.
void bohr_radius_free(struct BohrRadius *r);

// Radius value, NaN for a null handle.
//
// # Safety
// `r` must be null or a live handle.
double bohr_radius_value(const struct BohrRadius *r);

// Residual of the defining equation at the returned value, NaN for a null handle.
//
// # Safety
// `r` must be null or a live handle.
double bohr_radius_residual(const struct BohrRadius *r);

// # Safety
// `r` must be live; `lo` and `hi` must be valid.
enum BohrStatus bohr_radius_bracket(const struct BohrRadius *r, double *lo, double *hi);

// Sharpness report (or holds report where no extremal is known).
//
// # Safety
// `out` must be valid.
enum BohrStatus bohr_verify(enum BohrTheorem theorem,
                            double param,
                            uintptr_t order,
                            struct BohrReport **out);

// # Safety
// `rep` must be null or a live handle.
void bohr_report_free(struct BohrReport *rep);

// # Safety
// `rep` must be null or a live handle.
bool bohr_report_passed(const struct BohrReport *rep);

// # Safety
// `rep` must be null or a live handle.
double bohr_report_r0(const struct BohrReport *rep);

// Equality margin at the radius; NaN when the report has none.
//
// # Safety
// `rep` must be null or a live handle.
double bohr_report_equality_margin(const struct BohrReport *rep);

// Excess of the Bohr sum over the threshold just beyond the radius; NaN when absent.
//
// # Safety
// `rep` must be null or a live handle.
double bohr_report_violation_margin(const struct BohrReport *rep);

// Truncation order used by the report.
//
// # Safety
// `rep` must be null or a live handle.
uintptr_t bohr_report_order(const struct BohrReport *rep);

// Library version as a static NUL-terminated string.
const char *bohr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOHR_H */
