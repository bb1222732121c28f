#ifndef SCHRODINGER_H
#define SCHRODINGER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum SchStatus {
  SCH_STATUS_OK = 0,
  SCH_STATUS_NULL_POINTER = 1,
  SCH_STATUS_INVALID_UTF8 = 2,
  SCH_STATUS_IO = 3,
  SCH_STATUS_PARSE = 4,
  SCH_STATUS_INVALID_PROBLEM = 5,
  SCH_STATUS_INVALID_ARGUMENT = 6,
  SCH_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * The iteration collapsed to the zero potential.
   */
  SCH_STATUS_DEGENERATE = 8,
  SCH_STATUS_DIVERGENT = 9,
  SCH_STATUS_MAX_ITER = 10,
  SCH_STATUS_NUMERICAL = 11,
  SCH_STATUS_PANIC = 12,
} SchStatus;

/**
 * A validated problem together with its reduction.
 */
typedef struct SchProblem SchProblem;

/**
 * A converged solution on the reduced index sets.
 */
typedef struct SchSolution SchSolution;

/**
 * Stopping rule of the truncated scheme.
 */
typedef struct SchSolveOptions {
  double tol;
  size_t max_iter;
  double degenerate_cutoff;
} SchSolveOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Why the most recent fallible call on this thread failed, or null if it
 * succeeded. Valid until the next call into this library on the same thread.
 */
const char *sch_last_error(void);

/**
 * Static, NUL-terminated name of a status code.
 */
const char *sch_status_name(enum SchStatus status);

struct SchSolveOptions sch_solve_options_default(void);

/**
 * Parses a problem from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SchStatus sch_problem_from_json(const char *json, struct SchProblem **out);

/**
 * Discretizes a Gaussian spec `{"a": .., "b": .., "c": ..}`. `points == 0`
 * selects the default grid size; `half_width` is in standard deviations.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SchStatus sch_problem_from_gaussian_json(const char *json,
                                              size_t points,
                                              double half_width,
                                              struct SchProblem **out);

/**
 * Loads a problem file, CSV bundle directory or Gaussian spec file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SchStatus sch_problem_load(const char *path, struct SchProblem **out);

/**
 * # Safety
 * `problem` must come from this library and not be used afterwards.
 */
void sch_problem_free(struct SchProblem *problem);

/**
 * Sizes of the reduced source and target spaces.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SchStatus sch_problem_dims(const struct SchProblem *problem, size_t *nx, size_t *ny);

/**
 * Runs the truncated scheme. `ceiling` may be null for `U ≡ 1`, otherwise
 * it holds `ceiling_len` values over the reduced source space. `options`
 * may be null for the defaults. `*out` is set only on success.
 *
 * # Safety
 * All non-null pointers must be valid; `ceiling` must hold `ceiling_len` values.
 */
enum SchStatus sch_solve_fortet(const struct SchProblem *problem,
                                const struct SchSolveOptions *options,
                                const double *ceiling,
                                size_t ceiling_len,
                                struct SchSolution **out);

/**
 * Alternating-scaling baseline; needs a strictly positive kernel.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SchStatus sch_solve_sinkhorn(const struct SchProblem *problem,
                                  double tol,
                                  size_t max_iter,
                                  struct SchSolution **out);

/**
 * # Safety
 * `solution` must come from this library and not be used afterwards.
 */
void sch_solution_free(struct SchSolution *solution);

/**
 * # Safety
 * All pointers must be valid.
 */
enum SchStatus sch_solution_dims(const struct SchSolution *solution, size_t *nx, size_t *ny);

/**
 * Iteration count, marginal sup-errors and relative entropy. Any output
 * pointer may be null.
 *
 * # Safety
 * `solution` must be valid; non-null outputs must be writable.
 */
enum SchStatus sch_solution_stats(const struct SchSolution *solution,
                                  size_t *iterations,
                                  double *marginal_err_x,
                                  double *marginal_err_y,
                                  double *rel_entropy);

/**
 * Copies the potential `u` (length `nx`).
 *
 * # Safety
 * `buf` must hold `len` values.
 */
enum SchStatus sch_solution_potential(const struct SchSolution *solution, double *buf, size_t len);

/**
 * Copies `a` (length `nx`, summing to 1).
 *
 * # Safety
 * `buf` must hold `len` values.
 */
enum SchStatus sch_solution_a(const struct SchSolution *solution, double *buf, size_t len);

/**
 * Copies `b` (length `ny`).
 *
 * # Safety
 * `buf` must hold `len` values.
 */
enum SchStatus sch_solution_b(const struct SchSolution *solution, double *buf, size_t len);

/**
 * Copies the coupling row-major (length `nx * ny`).
 *
 * # Safety
 * `buf` must hold `len` values.
 */
enum SchStatus sch_solution_coupling(const struct SchSolution *solution, double *buf, size_t len);

/**
 * Serializes the solution, with original point indices, to JSON. Release
 * the string with [`sch_string_free`].
 *
 * # Safety
 * All pointers must be valid.
 */
enum SchStatus sch_solution_to_json(const struct SchSolution *solution, char **out);

/**
 * Integral criterion in both directions, kernel positivity and
 * boundedness, and the Gaussian matrix criterion when the problem came from
 * a Gaussian spec, as JSON. Release the string with [`sch_string_free`].
 *
 * # Safety
 * All pointers must be valid.
 */
enum SchStatus sch_problem_criteria_json(const struct SchProblem *problem, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void sch_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHRODINGER_H */
