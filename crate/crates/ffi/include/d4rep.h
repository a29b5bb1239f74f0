#ifndef D4REP_H
#define D4REP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum D4Status {
  D4_STATUS_OK = 0,
  D4_STATUS_NULL_POINTER,
  D4_STATUS_PANIC,
  D4_STATUS_NON_FINITE,
  D4_STATUS_NOT_HERMITIAN,
  D4_STATUS_NOT_UNITARY,
  D4_STATUS_NOT_SORTED,
  D4_STATUS_SUM_NOT_TWO,
  D4_STATUS_OUT_OF_RANGE,
  D4_STATUS_DEGENERATE_CHARACTER,
  D4_STATUS_LAMBDA_OUT_OF_RANGE,
  D4_STATUS_CONSTRAINT_VIOLATED,
  D4_STATUS_SIGN_PATTERN_INVALID,
  D4_STATUS_RELATION_RESIDUAL_TOO_LARGE,
  D4_STATUS_DOMAIN_VIOLATION,
  D4_STATUS_NOT_RANK_ONE,
  D4_STATUS_SCALARITY_VIOLATED,
  D4_STATUS_DECOMPOSABLE,
  D4_STATUS_NOT_A_QUADRUPLE,
  D4_STATUS_CHARACTER_MISMATCH,
  D4_STATUS_CLOSURE_VIOLATED,
  D4_STATUS_SAMPLING_EXHAUSTED,
} D4Status;

/**
 * Opaque handle to a validated projector quadruple.
 */
typedef struct D4Quadruple D4Quadruple;

/**
 * Canonical parameters. `branch` is 0 for generic characters and 1 for the
 * all-½ character; `gauge` is the unitary G, as 4 row-major `(re, im)` pairs,
 * with `G·Pᵢ·G*` equal to the canonical projectors.
 */
typedef struct D4Canonical {
  uint32_t branch;
  double lambda;
  double chi;
  double gauge[8];
} D4Canonical;

typedef struct D4CrossCheck {
  uint64_t trials;
  uint64_t passes;
  uint64_t decomposable_skipped;
  double max_equiv_residual;
} D4CrossCheck;

/**
 * Builds the family member with parameters `(lambda, chi)` for the
 * normalized character `alpha[4]`.
 *
 * # Safety
 * `alpha` must point to 4 doubles; `out` must be a valid pointer.
 */
enum D4Status d4_build(const double *alpha, double lambda, double chi, struct D4Quadruple **out);

/**
 * Wraps four projectors given as 32 doubles (projector, row, column,
 * re/im). The input must satisfy the defining relations within 1e-9.
 *
 * # Safety
 * `alpha` must point to 4 doubles, `entries` to 32; `out` must be valid.
 */
enum D4Status d4_from_matrices(const double *alpha,
                               const double *entries,
                               struct D4Quadruple **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `q` must come from this library and not be used afterwards.
 */
void d4_quadruple_free(struct D4Quadruple *q);

/**
 * Copies the projectors into `out[32]`, laid out as in `d4_from_matrices`.
 *
 * # Safety
 * `q` must be a live handle and `out` must have room for 32 doubles.
 */
enum D4Status d4_quadruple_projectors(const struct D4Quadruple *q, double *out);

/**
 * Largest of the Hermiticity, idempotence, trace, rank, sum-relation,
 * generator-relation and scalarity residuals.
 *
 * # Safety
 * `q` must be a live handle; `out` must be valid.
 */
enum D4Status d4_quadruple_max_residual(const struct D4Quadruple *q, double *out);

/**
 * Dimension of the commutant; 1 exactly when the quadruple is indecomposable.
 *
 * # Safety
 * `q` must be a live handle; `out` must be valid.
 */
enum D4Status d4_quadruple_commutant_dimension(const struct D4Quadruple *q, uint32_t *out);

/**
 * Edge maps Γ₀ᵢ of the graph representation as 4 columns of 2 complex
 * entries: `out[16]`, column-major, `(re, im)` pairs.
 *
 * # Safety
 * `q` must be a live handle and `out` must have room for 16 doubles.
 */
enum D4Status d4_graph_gamma(const struct D4Quadruple *q, double *out);

/**
 * Canonical parameters of an indecomposable quadruple.
 *
 * # Safety
 * `q` must be a live handle; `out` must be valid.
 */
enum D4Status d4_canonicalize(const struct D4Quadruple *q, struct D4Canonical *out);

/**
 * Writes 1 to `out` when `a` and `b` are unitarily equivalent, else 0.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid.
 */
enum D4Status d4_unitary_equivalent(const struct D4Quadruple *a,
                                    const struct D4Quadruple *b,
                                    double tol,
                                    int32_t *out);

/**
 * Samples `trials` Bloch-sphere solutions of the character and checks each
 * against the family.
 *
 * # Safety
 * `alpha` must point to 4 doubles; `out` must be valid.
 */
enum D4Status d4_cross_check(const double *alpha,
                             uint64_t trials,
                             uint64_t seed,
                             struct D4CrossCheck *out);

/**
 * Static, NUL-terminated name of a status code.
 */
const char *d4_status_name(enum D4Status status);

#endif  /* D4REP_H */
