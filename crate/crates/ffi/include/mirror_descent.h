/* C interface to the mirror-descent solvers. Generated by cbindgen; do not edit. */

#ifndef MIRROR_DESCENT_H
#define MIRROR_DESCENT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum MdStatus {
  MD_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MD_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument was out of range or inconsistent.
   */
  MD_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The solver reported an error; see `md_last_error_message`.
   */
  MD_STATUS_SOLVER_FAILURE = 3,
  /**
   * A panic was caught at the boundary.
   */
  MD_STATUS_PANIC = 4,
} MdStatus;

/**
 * Algorithm selector for `md_solve`.
 */
typedef enum MdAlgorithm {
  /**
   * Adaptive stopping rule, squared-norm non-productive steps.
   */
  MD_ALGORITHM_PRIOR_ADAPTIVE = 0,
  /**
   * Fixed budget `⌈2Θ₀²/ε²⌉`, normalized steps.
   */
  MD_ALGORITHM_NEW_ADAPTIVE = 1,
  /**
   * Fixed budget, quasi-convex direction oracles.
   */
  MD_ALGORITHM_QUASI_CONVEX = 2,
} MdAlgorithm;

/**
 * Opaque problem handle.
 */
typedef struct MdProblem MdProblem;

/**
 * Opaque prox-setup handle (geometry of the mirror step).
 */
typedef struct MdProx MdProx;

typedef struct Option_MdOracleFn Option_MdOracleFn;

/**
 * Summary of a finished run.
 */
typedef struct MdRunStats {
  size_t n_total;
  size_t n_productive;
  size_t n_nonproductive;
  double best_f;
  double g_at_output;
  /**
   * 0 = stopping rule, 1 = zero objective direction.
   */
  int32_t stop_reason;
  double wall_time_ms;
} MdRunStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The error message of the most recent failing call on this thread. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *md_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *md_version(void);

/**
 * Mean-of-distances benchmark problem over `points` integer anchors with
 * the structured 20-row constraint matrix (`n ≥ 20`).
 */
struct MdProblem *md_problem_fts(size_t n, size_t points, uint64_t seed, bool abs_constraints);

/**
 * Smallest-covering-ball benchmark problem (`n ≥ 20`).
 */
struct MdProblem *md_problem_covering_ball(size_t n,
                                           size_t points,
                                           uint64_t seed,
                                           bool abs_constraints);

/**
 * Concave square-root benchmark problem over the nonnegative unit ball
 * with plain matrix constraints (`n ≥ 20`).
 */
struct MdProblem *md_problem_holder_sqrt(size_t n);

/**
 * Quasi-convex covering benchmark: `centers` anchors with norms in `[1, 2]`
 * and common ball radius `radius`, inflation factor `rho > 1`, plain matrix
 * constraints (`n ≥ 20`).
 */
struct MdProblem *md_problem_qc_cover(size_t n,
                                      size_t centers,
                                      double rho,
                                      double radius,
                                      uint64_t seed);

/**
 * A custom problem from C callbacks. `constraint` may be null, making
 * every point feasible (`g ≡ −1`). Pass a negative `m_f`/`m_g` to leave the
 * constant unset. The mirror step projects onto the feasible set of the
 * prox handle used at solve time.
 *
 * # Safety
 * `objective` (and `constraint` when non-null) must satisfy the
 * [`MdOracleFn`] contract, and `user_data` must stay valid for the lifetime
 * of the problem handle.
 */
struct MdProblem *md_problem_custom(size_t n,
                                    struct Option_MdOracleFn objective,
                                    struct Option_MdOracleFn constraint,
                                    void *user_data,
                                    double m_f,
                                    double m_g);

/**
 * Frees a problem handle (null is ignored).
 *
 * # Safety
 * `problem` must have come from one of the `md_problem_*` constructors and
 * must not be used afterwards.
 */
void md_problem_free(struct MdProblem *problem);

/**
 * Euclidean geometry over the whole space, `d(x) = ½‖x‖₂²`.
 */
struct MdProx *md_prox_euclidean(size_t n);

/**
 * Euclidean geometry recentered at `x0` (length `n`); the solve starts
 * there. `feasible_radius > 0` restricts iterates to the euclidean ball of
 * that radius around the origin, `feasible_radius ≤ 0` leaves the whole
 * space.
 *
 * # Safety
 * `x0` must point to `n` readable doubles.
 */
struct MdProx *md_prox_euclidean_centered(size_t n, const double *x0, double feasible_radius);

/**
 * Entropy geometry over the probability simplex.
 */
struct MdProx *md_prox_entropy(size_t n);

/**
 * The benchmark default for a problem handle: euclidean geometry centered
 * at the normalized 0.1-vector over the problem's own feasible set.
 *
 * # Safety
 * `problem` must be a live handle from an `md_problem_*` constructor.
 */
struct MdProx *md_prox_default(const struct MdProblem *problem);

/**
 * Frees a prox handle (null is ignored).
 *
 * # Safety
 * `prox` must have come from an `md_prox_*` constructor and must not be
 * used afterwards.
 */
void md_prox_free(struct MdProx *prox);

/**
 * Runs one of the solver loops to accuracy `eps` with divergence bound
 * `theta0_sq`. On success writes the output point into `x_out` (length =
 * problem dimension, may be null) and the summary into `stats` (may be
 * null).
 *
 * # Safety
 * `problem` and `prox` must be live handles; `x_out`, when non-null, must
 * point to as many writable doubles as the problem dimension.
 */
enum MdStatus md_solve(const struct MdProblem *problem,
                       const struct MdProx *prox,
                       enum MdAlgorithm algorithm,
                       double eps,
                       double theta0_sq,
                       double *x_out,
                       struct MdRunStats *stats);

/**
 * Restart-accelerated solve for μ-strongly (quasi-)convex problems with the
 * linear accuracy translation `φ̂(ε) = ε/c_hat`. `quasiconvex_inner`
 * selects the quasi-convex inner loop. Writes the final point into `x_out`
 * (may be null) and the total inner iteration count into
 * `total_iterations` (may be null).
 *
 * # Safety
 * Same handle and buffer requirements as [`md_solve`].
 */
enum MdStatus md_restart_solve(const struct MdProblem *problem,
                               const struct MdProx *prox,
                               double eps,
                               double mu,
                               double r0_sq,
                               double omega_sq,
                               double c_hat,
                               bool quasiconvex_inner,
                               double *x_out,
                               size_t *total_iterations);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIRROR_DESCENT_H */
