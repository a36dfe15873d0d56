#ifndef QSV_H
#define QSV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a single identity check.
typedef enum QsvCheckStatus {
  QSV_CHECK_STATUS_PASS = 0,
  QSV_CHECK_STATUS_FAIL = 1,
  QSV_CHECK_STATUS_SKIPPED = 2,
} QsvCheckStatus;

// Result code of every fallible entry point.
typedef enum QsvStatus {
  QSV_STATUS_OK = 0,
  QSV_STATUS_NULL_POINTER = 1,
  QSV_STATUS_INVALID_PARAMETERS = 2,
  QSV_STATUS_INVALID_UTF8 = 3,
  QSV_STATUS_UNKNOWN_CHECK = 4,
  QSV_STATUS_INDEX_OUT_OF_RANGE = 5,
  QSV_STATUS_EVALUATION_FAILED = 6,
  QSV_STATUS_PANIC = 7,
} QsvStatus;

// Opaque truncated series.
typedef struct QsvSeries QsvSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy of the last error message on this thread, or NULL if none.
// Release with [`qsv_string_free`].
char *qsv_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void qsv_string_free(char *s);

// # Safety
// `s` must be NULL or a handle returned by this library, not yet freed.
void qsv_series_free(struct QsvSeries *s);

// String function `C_{m,ℓ}` at `(p, p')` (or its normalized form) below
// the q-order `order_num/order_den`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum QsvStatus qsv_string_coeff(int64_t p,
                                int64_t pprime,
                                int64_t m,
                                int64_t ell,
                                bool normalized,
                                int64_t order_num,
                                int64_t order_den,
                                struct QsvSeries **out);

// Character `χ_ℓ(z;q)` at `(p, p')` below `order_num/order_den`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum QsvStatus qsv_character(int64_t p,
                             int64_t pprime,
                             int64_t ell,
                             int64_t order_num,
                             int64_t order_den,
                             struct QsvSeries **out);

// Number of nonzero terms; 0 for NULL.
//
// # Safety
// `s` must be NULL or a live handle.
size_t qsv_series_len(const struct QsvSeries *s);

// Truncation order as an exact string.
//
// # Safety
// `s` must be a live handle and `out` a valid pointer.
enum QsvStatus qsv_series_order(const struct QsvSeries *s, char **out);

// Term `index` (in increasing q, then z order) as exact strings.
//
// # Safety
// `s` must be a live handle; each out pointer must be valid.
enum QsvStatus qsv_series_term(const struct QsvSeries *s,
                               size_t index,
                               char **out_q,
                               char **out_z,
                               char **out_coeff);

// Number of builtin identity checks.
size_t qsv_check_count(void);

// Id of builtin check `index`, or NULL when out of range.
// Release with [`qsv_string_free`].
char *qsv_check_id(size_t index);

// Runs one builtin check. `order_den == 0` selects the check's default
// order. `out_verified_order` may be NULL.
//
// # Safety
// `id` must be a NUL-terminated string; `out_status` a valid pointer.
enum QsvStatus qsv_run_check(const char *id,
                             int64_t order_num,
                             int64_t order_den,
                             enum QsvCheckStatus *out_status,
                             char **out_verified_order);

// Runs every builtin check matching the glob `filter` (empty: all) at
// default orders on `threads` workers and returns the canonical
// timing-free JSON report.
//
// # Safety
// `filter` must be a NUL-terminated string; `out_json` a valid pointer.
enum QsvStatus qsv_verify_json(const char *filter, size_t threads, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSV_H */
