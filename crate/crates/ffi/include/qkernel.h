/* Generated by cbindgen; do not edit. */

#ifndef QKERNEL_H
#define QKERNEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QkStatus {
  QK_STATUS_OK = 0,
  QK_STATUS_DOMAIN = 1,
  QK_STATUS_TRUNCATION_EXCEEDED = 2,
  QK_STATUS_DIVERGENCE_SUSPECTED = 3,
  QK_STATUS_INDEX = 4,
  QK_STATUS_PARSE = 5,
  QK_STATUS_IO = 6,
  QK_STATUS_NULL_POINTER = 7,
  QK_STATUS_PANIC = 8,
} QkStatus;

typedef enum QkPdeKind {
  QK_PDE_KIND_LAGUERRE = 0,
  QK_PDE_KIND_JACOBI = 1,
  QK_PDE_KIND_LEGENDRE = 2,
  QK_PDE_KIND_WALL = 3,
} QkPdeKind;

/**
 * Base `q` and truncation policy.
 */
typedef struct QkContext QkContext;

/**
 * Homogeneous bivariate polynomial with `f64` coefficients.
 */
typedef struct QkPolynomial QkPolynomial;

typedef struct QkGenFunParams {
  double alpha;
  double beta;
  double gamma;
  double x;
  double y;
  double u;
  double v;
  double t;
} QkGenFunParams;

typedef struct QkGenFunRecord {
  double lhs;
  double rhs;
  double rhs_error;
  double deviation;
  size_t n_lhs;
  size_t terms_rhs;
} QkGenFunRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success. The
 * pointer stays valid until the next call on the same thread.
 */
const char *qk_last_error(void);

/**
 * # Safety
 * `out_ctx` must be a valid pointer to writable storage for one handle.
 */
enum QkStatus qk_context_new(double q, struct QkContext **out_ctx);

/**
 * # Safety
 * `ctx` must come from [`qk_context_new`] and not have been freed. NULL is a no-op.
 */
void qk_context_free(struct QkContext *ctx);

/**
 * # Safety
 * `ctx` must be a live context handle.
 */
enum QkStatus qk_context_set_truncation(struct QkContext *ctx,
                                        size_t max_terms,
                                        double tail_tol,
                                        size_t consecutive_small);

/**
 * `(a; q)_n`.
 *
 * # Safety
 * `ctx` must be a live context handle and `out_value` writable.
 */
enum QkStatus qk_q_pochhammer(const struct QkContext *ctx, double a, size_t n, double *out_value);

/**
 * `(a; q)_inf` with an error bound.
 *
 * # Safety
 * `ctx` must be a live context handle; `out_value` and `out_error` writable.
 */
enum QkStatus qk_q_pochhammer_inf(const struct QkContext *ctx,
                                  double a,
                                  double *out_value,
                                  double *out_error);

/**
 * # Safety
 * `ctx` must be a live context handle and `out_value` writable.
 */
enum QkStatus qk_q_binomial(const struct QkContext *ctx, size_t n, size_t k, double *out_value);

/**
 * `r phi s (upper; lower; q, z)` under the context's stopping rule.
 *
 * # Safety
 * `upper` and `lower` must point to `n_upper` and `n_lower` readable values
 * (either may be NULL when its length is 0); out-pointers must be writable.
 */
enum QkStatus qk_phi_series(const struct QkContext *ctx,
                            const double *upper,
                            size_t n_upper,
                            const double *lower,
                            size_t n_lower,
                            double z,
                            double *out_value,
                            double *out_error,
                            size_t *out_terms);

/**
 * Bivariate q-Laguerre polynomial of degree `n`.
 *
 * # Safety
 * `ctx` must be a live context handle and `out_poly` writable.
 */
enum QkStatus qk_poly_laguerre(const struct QkContext *ctx,
                               size_t n,
                               double alpha,
                               struct QkPolynomial **out_poly);

/**
 * Bivariate little q-Jacobi polynomial of degree `n`.
 *
 * # Safety
 * `ctx` must be a live context handle and `out_poly` writable.
 */
enum QkStatus qk_poly_jacobi(const struct QkContext *ctx,
                             size_t n,
                             double alpha,
                             double beta,
                             struct QkPolynomial **out_poly);

/**
 * Polynomial from `len` coefficients of `x^k y^(len-1-k)`.
 *
 * # Safety
 * `coeffs` must point to `len` readable values (NULL allowed when `len` is 0).
 */
enum QkStatus qk_poly_from_coeffs(const double *coeffs, size_t len, struct QkPolynomial **out_poly);

/**
 * # Safety
 * `poly` must come from one of the `qk_poly_*` constructors and not have
 * been freed. NULL is a no-op.
 */
void qk_poly_free(struct QkPolynomial *poly);

/**
 * Degree, or -1 for the zero polynomial and for NULL.
 *
 * # Safety
 * `poly` must be a live polynomial handle or NULL.
 */
ptrdiff_t qk_poly_degree(const struct QkPolynomial *poly);

/**
 * Copies the coefficients into `buf`, which must hold `degree + 1` values.
 *
 * # Safety
 * `buf` must point to `len` writable values.
 */
enum QkStatus qk_poly_coeffs(const struct QkPolynomial *poly, double *buf, size_t len);

/**
 * # Safety
 * `poly` must be a live polynomial handle and `out_value` writable.
 */
enum QkStatus qk_poly_evaluate(const struct QkPolynomial *poly,
                               double x,
                               double y,
                               double *out_value);

/**
 * Scale-free residual of the chosen q-partial differential equation on
 * `poly`; `beta` is ignored except for [`QkPdeKind::Jacobi`], `alpha` for
 * [`QkPdeKind::Legendre`].
 *
 * # Safety
 * `ctx` and `poly` must be live handles and `out_metric` writable.
 */
enum QkStatus qk_pde_residual_metric(const struct QkContext *ctx,
                                     const struct QkPolynomial *poly,
                                     enum QkPdeKind kind,
                                     double alpha,
                                     double beta,
                                     double *out_metric);

/**
 * Compares the `n_lhs`-term partial sum of a generating function with its
 * right member. `kind` is a label such as `"l1"` or `"gf.jacobi"`.
 *
 * # Safety
 * `kind` must be a NUL-terminated string, `params` readable and `out_record`
 * writable.
 */
enum QkStatus qk_genfun_verify(const struct QkContext *ctx,
                               const char *kind,
                               const struct QkGenFunParams *params,
                               size_t n_lhs,
                               struct QkGenFunRecord *out_record);

/**
 * Runs one catalog identity. On success `*out_json` receives
 * `{"reports": [...], "summary": {...}}`, to be released with
 * [`qk_string_free`]. `config_json` may be NULL or empty for defaults.
 *
 * # Safety
 * `id` must be a NUL-terminated string, `config_json` NULL or one, and
 * `out_json` writable.
 */
enum QkStatus qk_verify_json(const char *id, const char *config_json, char **out_json);

/**
 * # Safety
 * `s` must come from this library and not have been freed. NULL is a no-op.
 */
void qk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QKERNEL_H */
