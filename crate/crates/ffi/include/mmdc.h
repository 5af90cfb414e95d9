#ifndef MMDC_H
#define MMDC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MmdcStatus {
  MMDC_STATUS_OK = 0,
  MMDC_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed text, inconsistent sizes or out-of-range values.
   */
  MMDC_STATUS_INVALID_INPUT = 2,
  /**
   * The instance failed a necessary feasibility check.
   */
  MMDC_STATUS_REJECTED = 3,
  /**
   * No saturating matching exists.
   */
  MMDC_STATUS_INFEASIBLE = 4,
  MMDC_STATUS_OUT_OF_RANGE = 5,
  MMDC_STATUS_INTERNAL = 6,
} MmdcStatus;

/**
 * Opaque problem instance.
 */
typedef struct MmdcInstance MmdcInstance;

/**
 * Opaque solve result.
 */
typedef struct MmdcSolution MmdcSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an instance from a row-major `s × t` weight array and the four
 * bound arrays (`s`, `s`, `t`, `t` entries).
 *
 * # Safety
 * Every array must hold the stated number of elements and `out` must be
 * writable.
 */
enum MmdcStatus mmdc_instance_new(size_t s,
                                  size_t t,
                                  const uint64_t *weights,
                                  const uint32_t *demand_a,
                                  const uint32_t *cap_a,
                                  const uint32_t *demand_b,
                                  const uint32_t *cap_b,
                                  struct MmdcInstance **out);

/**
 * Parses an instance in the text format read by the `mmdc` tool.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum MmdcStatus mmdc_instance_parse(const char *text, struct MmdcInstance **out);

/**
 * Runs the necessary feasibility checks without solving.
 *
 * # Safety
 * `inst` must come from `mmdc_instance_new` or `mmdc_instance_parse`.
 */
enum MmdcStatus mmdc_instance_validate(const struct MmdcInstance *inst);

/**
 * # Safety
 * `inst` must be null or a live handle; it is invalid afterwards.
 */
void mmdc_instance_free(struct MmdcInstance *inst);

/**
 * Solves `inst` at minimum cost.
 *
 * # Safety
 * `inst` must be a live instance handle and `out` writable.
 */
enum MmdcStatus mmdc_solve(const struct MmdcInstance *inst, struct MmdcSolution **out);

/**
 * Total cost, or 0 for a null handle.
 *
 * # Safety
 * `sol` must be null or a live solution handle.
 */
uint64_t mmdc_solution_cost(const struct MmdcSolution *sol);

/**
 * Number of distinct matched pairs, or 0 for a null handle.
 *
 * # Safety
 * `sol` must be null or a live solution handle.
 */
size_t mmdc_solution_pair_count(const struct MmdcSolution *sol);

/**
 * Reads matched pair `k` (0-based, ordered by row then column). Indices
 * written to `i` and `j` are 0-based.
 *
 * # Safety
 * `sol` must be a live solution handle and the out pointers writable.
 */
enum MmdcStatus mmdc_solution_pair(const struct MmdcSolution *sol,
                                   size_t k,
                                   size_t *i,
                                   size_t *j,
                                   uint32_t *multiplicity);

/**
 * Renders the solution in the text format written by `mmdc solve`. The
 * string must be released with [`mmdc_string_free`].
 *
 * # Safety
 * `sol` must be a live solution handle and `out` writable.
 */
enum MmdcStatus mmdc_solution_write(const struct MmdcSolution *sol, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void mmdc_string_free(char *s);

/**
 * # Safety
 * `sol` must be null or a live handle; it is invalid afterwards.
 */
void mmdc_solution_free(struct MmdcSolution *sol);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *mmdc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MMDC_H */
