#ifndef SKOLAB_H
#define SKOLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes. Zero is success.
 */
typedef enum SkolabStatus {
  SKOLAB_STATUS_OK = 0,
  SKOLAB_STATUS_NULL_POINTER = 1,
  /**
   * Bad p, n, t, λ or suite name.
   */
  SKOLAB_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Construction or linear algebra failed.
   */
  SKOLAB_STATUS_COMPUTATION = 3,
  /**
   * A result does not fit the output type.
   */
  SKOLAB_STATUS_OVERFLOW = 4,
  /**
   * Internal panic; the handle should be discarded.
   */
  SKOLAB_STATUS_PANIC = 5,
} SkolabStatus;

/**
 * Opaque algebra handle.
 */
typedef struct SkolabAlgebra SkolabAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *skolab_last_error(void);

/**
 * Builds SKO(n, n+1; λ, t) over GF(p). `t` has `t_len == n` entries.
 *
 * # Safety
 * `t` must point to `t_len` readable values; `out` must be writable.
 */
enum SkolabStatus skolab_algebra_new(uint32_t p,
                                     size_t n,
                                     const uint32_t *t,
                                     size_t t_len,
                                     int64_t lambda,
                                     uint64_t seed,
                                     struct SkolabAlgebra **out);

/**
 * # Safety
 * `alg` must come from [`skolab_algebra_new`] and not be used afterwards.
 */
void skolab_algebra_free(struct SkolabAlgebra *alg);

/**
 * Dimension of the ambient superalgebra O(n; t) ⊗ Λ(n+1).
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum SkolabStatus skolab_ambient_dim(const struct SkolabAlgebra *alg, size_t *out);

/**
 * Dimensions of g, g' and g'' (computed once, then cached on the handle).
 *
 * # Safety
 * `alg` must be a live handle; `out` must have room for 3 values.
 */
enum SkolabStatus skolab_derived_dims(const struct SkolabAlgebra *alg, size_t *out);

/**
 * Closed-form dim SKO(n, n+1; λ, t).
 *
 * # Safety
 * `t` must point to `t_len` readable values; `out` must be writable.
 */
enum SkolabStatus skolab_formula_dim(uint32_t p,
                                     size_t n,
                                     const uint32_t *t,
                                     size_t t_len,
                                     int64_t lambda,
                                     uint64_t *out);

/**
 * Closed-form dimension of the outer derivation algebra.
 *
 * # Safety
 * Same as [`skolab_formula_dim`].
 */
enum SkolabStatus skolab_formula_der_out(uint32_t p,
                                         size_t n,
                                         const uint32_t *t,
                                         size_t t_len,
                                         int64_t lambda,
                                         uint64_t *out);

/**
 * Runs verification suites and returns the JSON report.
 *
 * `suites` is a comma-separated list of suite names, or null / "all".
 * `all_pass` receives whether every check passed. Free `json_out` with
 * [`skolab_string_free`].
 *
 * # Safety
 * `alg` must be a live handle; `suites` null or NUL-terminated; outputs writable.
 */
enum SkolabStatus skolab_verify(const struct SkolabAlgebra *alg,
                                const char *suites,
                                char **json_out,
                                bool *all_pass);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void skolab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKOLAB_H */
