#ifndef ARCCOVER_H
#define ARCCOVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum ArcStatus {
  ARC_STATUS_OK = 0,
  ARC_STATUS_NULL_POINTER = 1,
  ARC_STATUS_INVALID_INPUT = 2,
  ARC_STATUS_SIZE_CAP = 3,
  ARC_STATUS_INTEGRITY = 4,
  ARC_STATUS_PRECONDITION = 5,
  ARC_STATUS_UNSUPPORTED = 6,
  ARC_STATUS_PARSE = 7,
  ARC_STATUS_PANIC = 8,
} ArcStatus;

/**
 * A circular-arc drawing.
 */
typedef struct ArcDrawing ArcDrawing;

/**
 * A graph, with its embedding when one is known.
 */
typedef struct ArcGraph ArcGraph;

typedef struct ArcMipResult {
  /**
   * Straight angles in the best assignment found.
   */
  uint64_t ang_pi;
  /**
   * Proven upper bound on straight angles.
   */
  uint64_t ang_pi_upper;
  /**
   * Lower bound on the segment number.
   */
  int64_t seg_lower;
  uint64_t nodes;
  uint64_t variables;
  uint64_t constraints;
  /**
   * 1 when solved to optimality, 0 when the budget ran out.
   */
  int32_t optimal;
} ArcMipResult;

typedef struct ArcVerifySummary {
  /**
   * 1 when the drawing passed every check.
   */
  int32_t valid;
  uint32_t dim;
  uint64_t supports;
  uint64_t circles;
  uint64_t lines;
  uint64_t spheres;
  uint64_t crossings;
  uint64_t issues;
} ArcVerifySummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the
 * library; valid until the next call.
 */
const char *arc_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void arc_string_free(char *s);

/**
 * Graph from a family descriptor such as `platonic:cube` or `bipartite:3x7`.
 *
 * # Safety
 * `descriptor` must be a NUL-terminated string and `out` writable.
 */
enum ArcStatus arc_graph_from_family(const char *descriptor, struct ArcGraph **out);

/**
 * Graph from its JSON form, optionally with a rotation system.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum ArcStatus arc_graph_from_json(const char *json, struct ArcGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be freed twice.
 */
void arc_graph_free(struct ArcGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
size_t arc_graph_vertex_count(const struct ArcGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
size_t arc_graph_edge_count(const struct ArcGraph *g);

/**
 * Best known bounds on `quantity` (`sigma12`, `sigma13`, `sigma23`, `seg`,
 * `arc`, `rho12`, `rho13`, `rho23`). A side without a bound is set to -1.
 *
 * # Safety
 * `g` must be a live handle, `quantity` a NUL-terminated string, and
 * `lower`, `upper` writable.
 */
enum ArcStatus arc_bounds(const struct ArcGraph *g,
                          const char *quantity,
                          int64_t *lower,
                          int64_t *upper);

/**
 * Solves the angle-assignment program over the open angle domain. Zero
 * `max_nodes` or non-positive `time_limit_secs` mean no limit.
 *
 * # Safety
 * `g` must be a live handle with an embedding and `out` writable.
 */
enum ArcStatus arc_mip_solve(const struct ArcGraph *g,
                             uint64_t max_nodes,
                             double time_limit_secs,
                             struct ArcMipResult *out);

/**
 * Builds a named construction (`ico7`, `cube4`, `kpq`, `book`,
 * `nested-tri`) with `nparams` integer parameters.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `params` readable for `nparams`
 * values (or null when `nparams` is 0), and `out` writable.
 */
enum ArcStatus arc_drawing_build(const char *name,
                                 const size_t *params,
                                 size_t nparams,
                                 struct ArcDrawing **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum ArcStatus arc_drawing_from_json(const char *json, struct ArcDrawing **out);

/**
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum ArcStatus arc_drawing_to_json(const struct ArcDrawing *d, char **out);

/**
 * Checks the drawing; the call succeeds even when the drawing is invalid.
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum ArcStatus arc_drawing_verify(const struct ArcDrawing *d,
                                  double tolerance,
                                  struct ArcVerifySummary *out);

/**
 * SVG for a plane drawing; `guides` nonzero adds dashed support circles.
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum ArcStatus arc_drawing_svg(const struct ArcDrawing *d, int32_t guides, char **out);

/**
 * # Safety
 * `d` must come from this library and not be freed twice.
 */
void arc_drawing_free(struct ArcDrawing *d);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARCCOVER_H */
