#ifndef SECTORIX_H
#define SECTORIX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SxStatus {
  SX_STATUS_OK = 0,
  SX_STATUS_NULL_POINTER = 1,
  SX_STATUS_INVALID_ARGUMENT = 2,
  SX_STATUS_DIMENSION_MISMATCH = 3,
  SX_STATUS_NOT_ACCRETIVE = 4,
  SX_STATUS_SINGULAR = 5,
  SX_STATUS_NOT_POSITIVE_DEFINITE = 6,
  SX_STATUS_NUMERICAL = 7,
  SX_STATUS_UNKNOWN_CHECK = 8,
  SX_STATUS_PANIC = 9,
} SxStatus;

typedef enum SxMeanKind {
  SX_MEAN_KIND_HARMONIC = 0,
  SX_MEAN_KIND_ARITHMETIC = 1,
  SX_MEAN_KIND_GEOMETRIC = 2,
} SxMeanKind;

// Outcome of `sx_check`.
typedef enum SxVerdict {
  SX_VERDICT_PASS = 0,
  SX_VERDICT_FAIL = 1,
  SX_VERDICT_VACUOUS = 2,
} SxVerdict;

// Opaque square complex matrix.
typedef struct SxMatrix SxMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next `sx_*` call on the same thread.
const char *sx_last_error(void);

// Library version as a static NUL-terminated string.
const char *sx_version(void);

// Builds an `n x n` matrix from row-major real and imaginary parts.
// `im` may be null for a real matrix.
//
// # Safety
// `re` (and `im` when non-null) must point to `n * n` doubles; `out` must be writable.
enum SxStatus sx_matrix_new(uintptr_t n, const double *re, const double *im, struct SxMatrix **out);

// Releases a handle; null is ignored.
//
// # Safety
// `m` must be null or a handle from this library that has not been freed.
void sx_matrix_free(struct SxMatrix *m);

// Dimension of a matrix, or 0 for null.
//
// # Safety
// `m` must be null or a live handle.
uintptr_t sx_matrix_dim(const struct SxMatrix *m);

// Copies entries out in row-major order; either buffer may be null.
//
// # Safety
// `m` must be a live handle; non-null buffers must hold `n * n` doubles.
enum SxStatus sx_matrix_get(const struct SxMatrix *m, double *re, double *im);

// Certified minimal sector angle of an accretive matrix.
//
// # Safety
// `m` must be a live handle and `alpha` writable.
enum SxStatus sx_sector_angle(const struct SxMatrix *m, double *alpha);

// Seeded sector matrix with eigen-angles in `[-alpha_max, alpha_max]`, one of them extremal.
//
// # Safety
// `out` must be writable.
enum SxStatus sx_gen_sector(uintptr_t n,
                            double alpha_max,
                            double cond_x,
                            uint64_t seed,
                            struct SxMatrix **out);

// Seeded Hermitian positive definite matrix with spectrum in `[m, big_m]`.
//
// # Safety
// `out` must be writable.
enum SxStatus sx_gen_hpd(uintptr_t n, double m, double big_m, uint64_t seed, struct SxMatrix **out);

// Weighted mean of two accretive matrices.
//
// # Safety
// `a`, `b` must be live handles and `out` writable.
enum SxStatus sx_mean(enum SxMeanKind kind,
                      const struct SxMatrix *a,
                      const struct SxMatrix *b,
                      double v,
                      struct SxMatrix **out);

// Geometric mean `A #_v B` with default quadrature controls.
//
// # Safety
// `a`, `b` must be live handles and `out` writable.
enum SxStatus sx_geometric_mean(const struct SxMatrix *a,
                                const struct SxMatrix *b,
                                double v,
                                struct SxMatrix **out);

// `K(h) = (h + 1)^2 / (4h)`.
//
// # Safety
// `out` must be writable.
enum SxStatus sx_kantorovich(double h, double *out);

// Evaluates a catalogue check on the pair `(a, b)` at weight `v`, looping
// over every `k`, `r`, `p` and `f`. Reports the smallest slack over all
// non-vacuous results and the combined verdict (any failure fails; all
// vacuous is vacuous).
//
// # Safety
// `id` must be a NUL-terminated string, `a`, `b` live handles, and the
// outputs writable.
enum SxStatus sx_check(const char *id,
                       const struct SxMatrix *a,
                       const struct SxMatrix *b,
                       double v,
                       double tol,
                       double *min_slack,
                       enum SxVerdict *verdict);

// Singular-value counterexample: `values` receives `s_1((A+B)^-1)`,
// `s_1(I+(A+B)^-1)` and `s_1(I+A^-1) s_1(I+B^-1)`.
//
// # Safety
// `values` must hold 3 doubles and `violated` be writable.
enum SxStatus sx_counterexample_sv(double *values, bool *violated);

// Determinant counterexample: `values` receives `|det (A+B)^-1|`,
// `|det(I+(A+B)^-1)|` and `|det(I+A^-1)| |det(I+B^-1)|`.
//
// # Safety
// `values` must hold 3 doubles and `violated` be writable.
enum SxStatus sx_counterexample_det(double *values, bool *violated);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SECTORIX_H */
