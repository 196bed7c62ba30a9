#ifndef NKP_H
#define NKP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NkpConstraint {
  NKP_CONSTRAINT_ONE = 0,
  NKP_CONSTRAINT_ALL = 1,
} NkpConstraint;

typedef enum NkpStatus {
  NKP_STATUS_OK = 0,
  NKP_STATUS_INVALID_ARGUMENT = 1,
  NKP_STATUS_PARSE_ERROR = 2,
  NKP_STATUS_UNSUPPORTED = 3,
  NKP_STATUS_SCALE_EXCEEDED = 4,
  NKP_STATUS_PANIC = 5,
  NKP_STATUS_INTERNAL = 6,
} NkpStatus;

/**
 * Opaque instance handle.
 */
typedef struct NkpInstance NkpInstance;

/**
 * Opaque solution handle.
 */
typedef struct NkpSolution NkpSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an instance from NUL-terminated text.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum NkpStatus nkp_instance_parse(const char *text, struct NkpInstance **out);

/**
 * # Safety
 * `instance` must come from [`nkp_instance_parse`] and not be freed yet.
 */
void nkp_instance_free(struct NkpInstance *instance);

/**
 * Number of vertices, 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t nkp_instance_vertex_count(const struct NkpInstance *instance);

/**
 * Budget stored in the instance, 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
uint64_t nkp_instance_budget(const struct NkpInstance *instance);

/**
 * Canonical text of the instance; release with [`nkp_string_free`].
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum NkpStatus nkp_instance_serialize(const struct NkpInstance *instance, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void nkp_string_free(char *s);

/**
 * Solves with the instance budget. `variant` is an algorithm name, or
 * null / `"auto"` for automatic routing.
 *
 * # Safety
 * `instance` must be a live handle, `variant` null or a valid C string and
 * `out` a valid pointer.
 */
enum NkpStatus nkp_solve(const struct NkpInstance *instance,
                         enum NkpConstraint constraint,
                         const char *variant,
                         double epsilon,
                         struct NkpSolution **out);

/**
 * # Safety
 * `solution` must come from [`nkp_solve`] and not be freed yet.
 */
void nkp_solution_free(struct NkpSolution *solution);

/**
 * # Safety
 * `solution` must be null or a live handle.
 */
uint64_t nkp_solution_profit(const struct NkpSolution *solution);

/**
 * # Safety
 * `solution` must be null or a live handle.
 */
uint64_t nkp_solution_weight(const struct NkpSolution *solution);

/**
 * Number of chosen vertices.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
size_t nkp_solution_len(const struct NkpSolution *solution);

/**
 * Chosen vertex ids in increasing order; valid while the handle lives.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
const size_t *nkp_solution_vertices(const struct NkpSolution *solution);

/**
 * Algorithm name; valid while the handle lives.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
const char *nkp_solution_algorithm(const struct NkpSolution *solution);

/**
 * Guarantee label; valid while the handle lives.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
const char *nkp_solution_guarantee(const struct NkpSolution *solution);

/**
 * Checks a vertex set. `violation` receives the smallest violating vertex
 * or -1.
 *
 * # Safety
 * `instance` must be a live handle, `ids` must point to `len` values (or
 * be null when `len` is 0), and the out pointers must be valid.
 */
enum NkpStatus nkp_check(const struct NkpInstance *instance,
                         enum NkpConstraint constraint,
                         const size_t *ids,
                         size_t len,
                         bool *feasible,
                         int64_t *violation);

/**
 * Message of the last failed call on this thread, empty after a success.
 * Valid until the next call on the same thread.
 */
const char *nkp_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NKP_H */
