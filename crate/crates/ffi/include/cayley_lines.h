#ifndef CAYLEY_LINES_H
#define CAYLEY_LINES_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum ClStatus {
  CL_STATUS_OK = 0,
  CL_STATUS_INVALID_ARGUMENT = 1,
  CL_STATUS_NULL_POINTER = 2,
  CL_STATUS_BUDGET_EXCEEDED = 3,
  CL_STATUS_INTERNAL = 4,
  CL_STATUS_PANIC = 5,
} ClStatus;

/**
 * Opaque graph handle.
 */
typedef struct ClGraph ClGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Valid until the next
 * failing call on the same thread; never null.
 */
const char *cl_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cl_version(void);

/**
 * Samples a connection set with line probability `p` from `seed` and builds its graph.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum ClStatus cl_graph_sample(uint32_t q,
                              uint32_t n,
                              double p,
                              uint64_t seed,
                              struct ClGraph **out);

/**
 * Builds a graph from connection-set JSON `{"q":..,"n":..,"lines":[..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for writes.
 */
enum ClStatus cl_graph_from_json(const char *json, struct ClGraph **out);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void cl_graph_free(struct ClGraph *g);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cl_string_free(char *s);

/**
 * Connection set JSON for the graph.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum ClStatus cl_graph_to_json(const struct ClGraph *g, char **out);

/**
 * Number of vertices `q^n`.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum ClStatus cl_graph_vertex_count(const struct ClGraph *g, size_t *out);

/**
 * Degree `|S|` of every vertex.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum ClStatus cl_graph_degree(const struct ClGraph *g, size_t *out);

/**
 * Adjacency of vertices `u` and `v` (0-indexed).
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum ClStatus cl_graph_is_edge(const struct ClGraph *g, size_t u, size_t v, bool *out);

/**
 * Lower and upper bounds on the chromatic number; they are equal when proved.
 *
 * # Safety
 * `g` must be a live handle; `lower` and `upper` valid for writes.
 */
enum ClStatus cl_graph_chromatic_number(const struct ClGraph *g,
                                        uint64_t budget_nodes,
                                        size_t *lower,
                                        size_t *upper);

/**
 * Automorphism solver report as JSON. Returns `BudgetExceeded` (with the
 * partial report still written) when the search did not finish.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum ClStatus cl_graph_aut_report_json(const struct ClGraph *g,
                                       uint64_t budget_nodes,
                                       uint64_t budget_enum,
                                       char **out);

/**
 * Whether the automorphism group equals the affine group of translations and scalings.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum ClStatus cl_graph_equals_k(const struct ClGraph *g, uint64_t budget_nodes, bool *out);

/**
 * The proper distinguishing `(q+1)`-coloring as JSON, or null when it does
 * not certify (for example when `S` is empty).
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum ClStatus cl_graph_certificate_json(const struct ClGraph *g, uint64_t budget_nodes, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAYLEY_LINES_H */
