#ifndef BIHARM_H
#define BIHARM_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every call.
typedef enum BhStatus {
  BH_STATUS_OK = 0,
  BH_STATUS_NULL_POINTER = 1,
  BH_STATUS_ZERO_DIVISOR = 2,
  BH_STATUS_DOMAIN = 3,
  BH_STATUS_DEGREE_OVERFLOW = 4,
  BH_STATUS_INVALID_ARGUMENT = 5,
  BH_STATUS_PANIC = 6,
} BhStatus;

// Which formula for `v_y` the elasticity solver uses.
typedef enum BhV2Formula {
  BH_V2_FORMULA_DERIVED = 0,
  BH_V2_FORMULA_PRINTED = 1,
} BhV2Formula;

// Opaque elastic solution.
typedef struct BhElasticSolution BhElasticSolution;

// Opaque monogenic function.
typedef struct BhMonogenic BhMonogenic;

// `u1·e₁ + u2·ie₁ + u3·e₂ + u4·ie₂`.
typedef struct BhElement {
  double u1;
  double u2;
  double u3;
  double u4;
} BhElement;

// `a0 + Σ cos[n-1]·cos nθ + sin[n-1]·sin nθ` for `n = 1..=len`.
// `cos` and `sin` may be null only when `len` is 0.
typedef struct BhFourier {
  double a0;
  const double *cos;
  const double *sin;
  uintptr_t len;
} BhFourier;

// All fields of the elastic solution at one point.
typedef struct BhElasticPoint {
  // `U1..U4`
  double components[4];
  // `u_x, v_y, u_y, v_x`
  double gradients[4];
  double sigma_x;
  double sigma_y;
  double tau_xy;
  double u;
  double v;
} BhElasticPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *bh_last_error(void);

// `out = a · b`
//
// # Safety
// `out` must be null or valid for writes.
enum BhStatus bh_multiply(struct BhElement a, struct BhElement b, struct BhElement *out);

// `out = a⁻¹`; fails with `ZeroDivisor` on the nilpotent line.
//
// # Safety
// `out` must be null or valid for writes.
enum BhStatus bh_invert(struct BhElement a, struct BhElement *out);

// `Σ coeffs[k]·ζ^k` for `k < len`.
//
// # Safety
// `coeffs` must point to `len` elements; `out` must be valid for writes.
enum BhStatus bh_monogenic_from_polynomial(const struct BhElement *coeffs,
                                           uintptr_t len,
                                           struct BhMonogenic **out);

// Solves the problem of recovering a monogenic function from the boundary
// values of its `U1` and `U4` components.
//
// # Safety
// `u1`, `u4` must point to valid [`BhFourier`] descriptors; `out` must be
// valid for writes.
enum BhStatus bh_monogenic_solve(const struct BhFourier *u1,
                                 const struct BhFourier *u4,
                                 struct BhMonogenic **out);

// Value at `x·e₁ + y·e₂`, which must lie in the closed unit disk.
//
// # Safety
// `phi` must come from this library and not be freed; `out` must be valid
// for writes.
enum BhStatus bh_monogenic_evaluate(const struct BhMonogenic *phi,
                                    double x,
                                    double y,
                                    struct BhElement *out);

// Derivative as a new handle.
//
// # Safety
// As for [`bh_monogenic_evaluate`].
enum BhStatus bh_monogenic_derivative(const struct BhMonogenic *phi, struct BhMonogenic **out);

// # Safety
// `phi` must be null or a live handle from this library.
void bh_monogenic_free(struct BhMonogenic *phi);

// Reconstructs the plane-strain field whose boundary values of `u_x` and
// `v_y` are `g1` and `g2`. Displacements vanish at `(base_x, base_y)`.
// `formula` is a [`BhV2Formula`] value.
//
// # Safety
// `g1`, `g2` must point to valid [`BhFourier`] descriptors; `out` must be
// valid for writes.
enum BhStatus bh_elastic_solve(const struct BhFourier *g1,
                               const struct BhFourier *g2,
                               double lambda,
                               double mu,
                               double base_x,
                               double base_y,
                               uint32_t formula,
                               struct BhElasticSolution **out);

// All fields at `(x, y)` in the closed unit disk.
//
// # Safety
// `sol` must be a live handle; `out` must be valid for writes.
enum BhStatus bh_elastic_point(const struct BhElasticSolution *sol,
                               double x,
                               double y,
                               struct BhElasticPoint *out);

// # Safety
// `sol` must be null or a live handle from this library.
void bh_elastic_free(struct BhElasticSolution *sol);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIHARM_H */
