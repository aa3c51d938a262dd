/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef ACYCLIC_MATCHING_H
#define ACYCLIC_MATCHING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AmStatus {
  AM_STATUS_OK = 0,
  AM_STATUS_NULL_POINTER = 1,
  AM_STATUS_INVALID_GRAPH = 2,
  AM_STATUS_PARSE_ERROR = 3,
  AM_STATUS_INVALID_ARGUMENT = 4,
  AM_STATUS_TOO_LARGE = 5,
  /**
   * A self-check of the solver failed.
   */
  AM_STATUS_INTERNAL = 6,
} AmStatus;

typedef enum AmKind {
  AM_KIND_PLAIN = 0,
  AM_KIND_ACYCLIC = 1,
  AM_KIND_INDUCED = 2,
  /**
   * Uses the `k` argument.
   */
  AM_KIND_DEGENERATE = 3,
  /**
   * Acyclic, and the matched vertices induce a corona of a forest.
   */
  AM_KIND_CORONA = 4,
} AmKind;

/**
 * An immutable simple graph.
 */
typedef struct AmGraph AmGraph;

/**
 * The outcome of [`am_solve`].
 */
typedef struct AmReport AmReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *am_last_error(void);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 * `edges` (`u0, v0, u1, v1, ...`).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (or be null when
 * `edge_count` is 0) and `out` must be writable.
 */
enum AmStatus am_graph_new(size_t n, const size_t *edges, size_t edge_count, struct AmGraph **out);

/**
 * Parses the edge-list text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
enum AmStatus am_graph_parse(const char *text, struct AmGraph **out);

/**
 * # Safety
 * `graph` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void am_graph_free(struct AmGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle or null (which yields 0).
 */
size_t am_graph_vertex_count(const struct AmGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle or null (which yields 0).
 */
size_t am_graph_edge_count(const struct AmGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle or null (which yields 0).
 */
size_t am_graph_max_degree(const struct AmGraph *graph);

/**
 * Runs the reducer. With `analyze` set, local-search stages carry their
 * partition accounting in the JSON trace.
 *
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum AmStatus am_solve(const struct AmGraph *graph, bool analyze, struct AmReport **out);

/**
 * # Safety
 * `report` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void am_report_free(struct AmReport *report);

/**
 * Number of matched edges.
 *
 * # Safety
 * `report` must be a live handle or null (which yields 0).
 */
size_t am_report_size(const struct AmReport *report);

/**
 * Copies up to `capacity` matched edges into `buf` as flat pairs and
 * returns how many were copied. `buf` must hold `2 * capacity` values.
 *
 * # Safety
 * `report` must be a live handle; `buf` must be writable for
 * `2 * capacity` values or null when `capacity` is 0.
 */
size_t am_report_edges(const struct AmReport *report, size_t *buf, size_t capacity);

/**
 * The size bound holds for this run, decided exactly.
 *
 * # Safety
 * `report` must be a live handle or null (which yields false).
 */
bool am_report_bound_ok(const struct AmReport *report);

/**
 * The size bound and every per-stage check hold.
 *
 * # Safety
 * `report` must be a live handle or null (which yields false).
 */
bool am_report_certified(const struct AmReport *report);

/**
 * The run's JSON trace, or null on a null handle. Release with
 * [`am_string_free`].
 *
 * # Safety
 * `report` must be a live handle or null.
 */
char *am_report_to_json(const struct AmReport *report);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void am_string_free(char *s);

/**
 * Checks `edge_count` flat pairs against `kind`. Writes the verdict to
 * `out_ok`; when it is false, [`am_last_error`] names the violation.
 *
 * # Safety
 * `graph` must be a live handle, `edges` readable for `2 * edge_count`
 * values (or null when 0), and `out_ok` writable.
 */
enum AmStatus am_verify(const struct AmGraph *graph,
                        enum AmKind kind,
                        size_t k,
                        const size_t *edges,
                        size_t edge_count,
                        bool *out_ok);

/**
 * Exact maximum matching size of the given kind for graphs with at most
 * `cap` vertices.
 *
 * # Safety
 * `graph` must be a live handle and `out_optimum` writable.
 */
enum AmStatus am_exact(const struct AmGraph *graph,
                       enum AmKind kind,
                       size_t k,
                       size_t cap,
                       size_t *out_optimum);

/**
 * Writes whether `size·(Δ² + 12Δ^{3/2}) ≥ 6n` to `out`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AmStatus am_meets_thm1(uint64_t size, uint64_t n, uint64_t delta, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ACYCLIC_MATCHING_H */
