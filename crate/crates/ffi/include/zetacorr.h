#ifndef ZETACORR_H
#define ZETACORR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * β(T) choices for [`zpc_m_of_x`].
 */
typedef enum ZpcBetaKind {
  /**
   * β = param
   */
  ZPC_BETA_KIND_CONSTANT = 0,
  /**
   * (log T)^{3 − 2·param}
   */
  ZPC_BETA_KIND_COR1_POWER = 1,
  /**
   * max(1, log³T / (param⁴ (log log 2T)²))
   */
  ZPC_BETA_KIND_COR3 = 2,
} ZpcBetaKind;

/**
 * 𝓛(T) choices for [`zpc_m_of_x`].
 */
typedef enum ZpcEllKind {
  ZPC_ELL_KIND_LOG_T = 0,
  ZPC_ELL_KIND_LOGX_PROXY = 1,
  /**
   * (log T)^param
   */
  ZPC_ELL_KIND_POWER = 2,
} ZpcEllKind;

/**
 * Status codes returned by every fallible function.
 */
typedef enum ZpcStatus {
  ZPC_STATUS_OK = 0,
  ZPC_STATUS_NULL_POINTER = 1,
  ZPC_STATUS_INVALID_UTF8 = 2,
  ZPC_STATUS_DOMAIN = 3,
  ZPC_STATUS_RANGE = 4,
  ZPC_STATUS_HEIGHT_EXCEEDED = 5,
  ZPC_STATUS_COMPLETENESS = 6,
  ZPC_STATUS_PARSE = 7,
  ZPC_STATUS_CAPACITY = 8,
  ZPC_STATUS_CONVERGENCE = 9,
  ZPC_STATUS_INTEGER_ARGUMENT = 10,
  ZPC_STATUS_SCHEDULE_DOMAIN = 11,
  ZPC_STATUS_FORMAT = 12,
  ZPC_STATUS_IO = 13,
  ZPC_STATUS_PANIC = 14,
} ZpcStatus;

/**
 * Opaque von Mangoldt table.
 */
typedef struct ZpcLambdaTable ZpcLambdaTable;

/**
 * Opaque set of zeta-zero ordinates.
 */
typedef struct ZpcZeroSet ZpcZeroSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *zpc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *zpc_version(void);

/**
 * Computes all zeros with 0 < γ ≤ t_max (20 ≤ t_max ≤ 1e5).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum ZpcStatus zpc_zeros_compute(double t_max, double refine_tol, struct ZpcZeroSet **out);

/**
 * Reads a text table (one ordinate per line). `precision <= 0` selects the
 * default of 1e-9.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ZpcStatus zpc_zeros_ingest(const char *path, double precision, struct ZpcZeroSet **out);

/**
 * Builds a zero set from `len` strictly increasing ordinates, complete up to
 * `t_max`.
 *
 * # Safety
 * `gammas` must point to `len` readable doubles (or be NULL with len 0).
 */
enum ZpcStatus zpc_zeros_from_array(const double *gammas,
                                    size_t len,
                                    double t_max,
                                    double precision,
                                    struct ZpcZeroSet **out);

/**
 * Loads a binary zero cache.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ZpcStatus zpc_zeros_load_cache(const char *path, struct ZpcZeroSet **out);

/**
 * Writes a binary zero cache.
 *
 * # Safety
 * `zs` must be a live handle and `path` a NUL-terminated string.
 */
enum ZpcStatus zpc_zeros_save_cache(const struct ZpcZeroSet *zs, const char *path);

/**
 * Number of ordinates; 0 for a NULL handle.
 *
 * # Safety
 * `zs` must be NULL or a live handle.
 */
size_t zpc_zeros_len(const struct ZpcZeroSet *zs);

/**
 * Height up to which the set is complete; NaN for a NULL handle.
 *
 * # Safety
 * `zs` must be NULL or a live handle.
 */
double zpc_zeros_t_max(const struct ZpcZeroSet *zs);

/**
 * The `index`-th ordinate (0-based).
 *
 * # Safety
 * `zs` must be a live handle and `out` a valid pointer.
 */
enum ZpcStatus zpc_zeros_get(const struct ZpcZeroSet *zs, size_t index, double *out);

/**
 * Copies up to `capacity` ordinates into `buf`; the number copied goes to
 * `written`.
 *
 * # Safety
 * `buf` must have room for `capacity` doubles; `written` must be valid.
 */
enum ZpcStatus zpc_zeros_copy(const struct ZpcZeroSet *zs,
                              double *buf,
                              size_t capacity,
                              size_t *written);

/**
 * Releases a zero set. NULL is ignored.
 *
 * # Safety
 * `zs` must be NULL or a handle not yet freed.
 */
void zpc_zeros_free(struct ZpcZeroSet *zs);

/**
 * Sieves Λ(n) for n ≤ n_max (at most 1e8).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ZpcStatus zpc_sieve(uint64_t n_max, struct ZpcLambdaTable **out);

/**
 * Releases a Λ table. NULL is ignored.
 *
 * # Safety
 * `table` must be NULL or a handle not yet freed.
 */
void zpc_sieve_free(struct ZpcLambdaTable *table);

/**
 * ψ(x) = Σ_{n≤x} Λ(n).
 *
 * # Safety
 * `table` must be a live handle and `out` a valid pointer.
 */
enum ZpcStatus zpc_psi(const struct ZpcLambdaTable *table, double x, double *out);

/**
 * π(x).
 *
 * # Safety
 * `table` must be a live handle and `out` a valid pointer.
 */
enum ZpcStatus zpc_pi(const struct ZpcLambdaTable *table, double x, uint64_t *out);

/**
 * li(x) = ∫₂^x dt/log t.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ZpcStatus zpc_li(double x, double *out);

/**
 * F_β(x, T) by the pair sum. `err` may be NULL.
 *
 * # Safety
 * `zs` must be a live handle; `value` must be valid.
 */
enum ZpcStatus zpc_f_direct(const struct ZpcZeroSet *zs,
                            double x,
                            double t,
                            double beta,
                            double *value,
                            double *err);

/**
 * F_β(x, T) from the integral representation. `err` may be NULL.
 *
 * # Safety
 * `zs` must be a live handle; `value` must be valid.
 */
enum ZpcStatus zpc_f_integral(const struct ZpcZeroSet *zs,
                              double x,
                              double t,
                              double beta,
                              double tail_tol,
                              double *value,
                              double *err);

/**
 * F_β(x, T) rebuilt from F(·, T) through the β-weighted integral identity.
 *
 * # Safety
 * `zs` must be a live handle and `out` a valid pointer.
 */
enum ZpcStatus zpc_lemma2_rhs(const struct ZpcZeroSet *zs,
                              double x,
                              double t,
                              double beta,
                              double quad_tol,
                              double *out);

/**
 * x − 2 Re Σ_{γ≤Y} x^{1/2+iγ}/(1/2+iγ). `x` must not be an integer.
 *
 * # Safety
 * `zs` must be a live handle and `out` a valid pointer.
 */
enum ZpcStatus zpc_truncated_psi(const struct ZpcZeroSet *zs, double x, double y, double *out);

/**
 * −2 Im Σ_{W<γ≤Y} x^{iγ}/γ.
 *
 * # Safety
 * `zs` must be a live handle and `out` a valid pointer.
 */
enum ZpcStatus zpc_zero_sum_r(const struct ZpcZeroSet *zs,
                              double x,
                              double w,
                              double y,
                              double *out);

/**
 * M(x) = Σ_k √(𝓛(2^k)/β(2^k)) for the given schedules.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ZpcStatus zpc_m_of_x(double x,
                          enum ZpcEllKind ell,
                          double ell_param,
                          enum ZpcBetaKind beta,
                          double beta_param,
                          double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETACORR_H */
