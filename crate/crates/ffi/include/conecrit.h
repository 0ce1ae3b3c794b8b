#ifndef CONECRIT_H
#define CONECRIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>

typedef enum CcBarrier {
  CC_BARRIER_NONE = 0,
  CC_BARRIER_SEPARATED_POWER = 1,
  CC_BARRIER_POWER_LOG = 2,
  CC_BARRIER_SUBLINEAR_INHOM = 3,
  CC_BARRIER_SUBLINEAR_NEG = 4,
  CC_BARRIER_CRITICAL_SUBLINEAR = 5,
  CC_BARRIER_FULL_SPHERE_LOG = 6,
} CcBarrier;

typedef enum CcBranch {
  CC_BRANCH_NONE = 0,
  CC_BRANCH_MINUS = 1,
  CC_BRANCH_PLUS = 2,
  CC_BRANCH_BOTH = 3,
} CcBranch;

typedef enum CcCone {
  CC_CONE_FULL_SPHERE = 0,
  /**
   * Planar sector of opening `cone_value`, `N = 2`.
   */
  CC_CONE_ARC = 1,
  /**
   * Geodesic cap of half-angle `cone_value`, `N >= 3`.
   */
  CC_CONE_CAP = 2,
  /**
   * Cross-section given only through `λ1 = cone_value`.
   */
  CC_CONE_TABULATED = 3,
} CcCone;

typedef enum CcJustification {
  CC_JUSTIFICATION_LINEAR_SPECTRAL = 0,
  CC_JUSTIFICATION_SUPERCRITICAL_POTENTIAL = 1,
  CC_JUSTIFICATION_SUBCRITICAL_LINE = 2,
  CC_JUSTIFICATION_CRITICAL_LINE = 3,
  CC_JUSTIFICATION_BARRIER_EXISTS = 4,
} CcJustification;

/**
 * Result of every call.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_INVALID_ARGUMENT = 1,
  CC_STATUS_NULL_POINTER = 2,
  /**
   * The requested object does not exist for these parameters, e.g. a barrier outside the existence region.
   */
  CC_STATUS_NOT_EXISTS = 3,
  CC_STATUS_NUMERICAL = 4,
  CC_STATUS_PANIC = 5,
} CcStatus;

typedef enum CcVerdict {
  CC_VERDICT_EXISTS = 0,
  CC_VERDICT_NO_POSITIVE_SUPERSOLUTIONS = 1,
  CC_VERDICT_OPEN_PROBLEM = 2,
} CcVerdict;

/**
 * Opaque problem: validated parameters plus the spectral basis of the cross-section.
 */
typedef struct CcProblem CcProblem;

/**
 * Parameters of `-Δu - B|x|^{-2}u - A x·∇u/|x|² = C|x|^{-σ} u^p` on the exterior cone `r > ρ`.
 */
typedef struct CcParams {
  uint32_t n;
  double a;
  double b;
  double c;
  double sigma;
  double p;
  enum CcCone cone;
  double cone_value;
  double rho;
} CcParams;

/**
 * Classification record; `lambda_sigma` is NaN when the potential is above the threshold.
 */
typedef struct CcClassification {
  enum CcVerdict verdict;
  enum CcJustification justification;
  enum CcBranch branch;
  enum CcBarrier barrier;
  /**
   * Critical line at `p` in `σ` coordinates.
   */
  double lambda_sigma;
  /**
   * Barrier exponent (`α` or `β`), NaN without a barrier.
   */
  double barrier_exponent;
  double mu;
  double s;
  double lambda1;
  double threshold;
} CcClassification;

/**
 * Roots of `γ(γ + N - 2 + A) = λ1 - B` and their reduced shifts `α = γ + A/2`.
 */
typedef struct CcRoots {
  double gamma_minus;
  double gamma_plus;
  double alpha_minus;
  double alpha_plus;
  bool double_root;
} CcRoots;

typedef struct CcResidualReport {
  enum CcBarrier barrier;
  double tau;
  double rho_prime;
  double min_residual;
  bool passed;
} CcResidualReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Validates `params`, solves the principal eigenproblem and stores a new handle in `*out`.
 *
 * # Safety
 * `params` must point to a valid [`CcParams`] and `out` to writable storage for a pointer.
 */
enum CcStatus cc_problem_new(const struct CcParams *params, struct CcProblem **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `problem` must be null or a handle from [`cc_problem_new`] not yet freed.
 */
void cc_problem_free(struct CcProblem *problem);

/**
 * Existence verdict at the handle's `(p, σ)`.
 *
 * # Safety
 * `problem` must be a live handle and `out` writable.
 */
enum CcStatus cc_classify(const struct CcProblem *problem, struct CcClassification *out);

/**
 * Indicial roots of the handle's linear operator; [`CcStatus::NotExists`] above the threshold.
 *
 * # Safety
 * `problem` must be a live handle and `out` writable.
 */
enum CcStatus cc_indicial_roots(const struct CcProblem *problem, struct CcRoots *out);

/**
 * Exponent of the Kelvin image problem, `N + 2 - p(N - 2) - s`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CcStatus cc_kelvin_s(uint32_t n, double p, double s, double *out);

/**
 * `k`-th (1-based) Dirichlet eigenvalue of the arc `(0, θ0)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CcStatus cc_eigen_arc_lambda(double theta0, uint32_t k, double *out);

/**
 * Principal Dirichlet eigenvalue of the geodesic cap of half-angle `θ0` in `S^{N-1}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CcStatus cc_eigen_cap_lambda1(uint32_t n, double theta0, double *out);

/**
 * Builds the barrier for an existence point and checks its residual on the default grid.
 *
 * # Safety
 * `problem` must be a live handle and `out` writable.
 */
enum CcStatus cc_verify_barrier(const struct CcProblem *problem, struct CcResidualReport *out);

/**
 * Message for the last failed call on this thread; empty after a success.  The pointer
 * stays valid until the next call on the same thread.
 */
const char *cc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONECRIT_H */
