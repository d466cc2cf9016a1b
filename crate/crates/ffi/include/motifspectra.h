#ifndef MOTIFSPECTRA_H
#define MOTIFSPECTRA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum MsStatus {
  MS_STATUS_OK = 0,
  MS_STATUS_NULL_POINTER = 1,
  MS_STATUS_INVALID_PARAMS = 2,
  MS_STATUS_INVALID_INPUT = 3,
  MS_STATUS_DIMENSION_MISMATCH = 4,
  MS_STATUS_SOLVER_FAILURE = 5,
  MS_STATUS_UNDEFINED_ESTIMATE = 6,
  MS_STATUS_IO = 7,
  // A Rust panic was caught at the boundary.
  MS_STATUS_INTERNAL = 8,
} MsStatus;

// Values accepted as the `model` argument of [`ms_graph_generate`].
typedef enum MsModel {
  // Dyadic edges only.
  MS_MODEL_SBM = 0,
  // Hyperedges only.
  MS_MODEL_HYPERGRAPH = 1,
  // Both layers, drawn independently.
  MS_MODEL_SUPSBM = 2,
} MsModel;

// Opaque community assignment.
typedef struct MsAssignment MsAssignment;

// Opaque superimposed graph.
typedef struct MsGraph MsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null if none.
// The pointer stays valid until the next failing call on the same thread.
const char *ms_last_error(void);

// Library version as a static NUL-terminated string.
const char *ms_version(void);

// Builds a graph from `n_edges` vertex pairs and `n_hyperedges` vertex triples,
// both flattened. Duplicates are merged.
//
// # Safety
// `edges` must point to `2 * n_edges` values and `hyperedges` to
// `3 * n_hyperedges` values. `out_graph` must be writable.
enum MsStatus ms_graph_new(size_t n,
                           const uint32_t *edges,
                           size_t n_edges,
                           const uint32_t *hyperedges,
                           size_t n_hyperedges,
                           struct MsGraph **out_graph);

// Draws a graph from a block model with `k` equal contiguous communities.
// `model` is an [`MsModel`] value.
// The planted assignment is returned through `out_truth` unless it is null.
//
// # Safety
// `out_graph` must be writable; `out_truth` must be writable or null.
enum MsStatus ms_graph_generate(uint32_t model,
                                size_t n,
                                size_t k,
                                double a_e,
                                double b_e,
                                double a_t,
                                double b_t,
                                uint64_t seed,
                                struct MsGraph **out_graph,
                                struct MsAssignment **out_truth);

// # Safety
// `g` must come from this library and not be freed twice. Null is a no-op.
void ms_graph_free(struct MsGraph *g);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `g` must be a live handle or null.
size_t ms_graph_n(const struct MsGraph *g);

// # Safety
// `g` must be a live handle or null.
size_t ms_graph_edge_count(const struct MsGraph *g);

// # Safety
// `g` must be a live handle or null.
size_t ms_graph_hyperedge_count(const struct MsGraph *g);

// Wraps `n` labels, each below `k`.
//
// # Safety
// `labels` must point to `n` values; `out_assignment` must be writable.
enum MsStatus ms_assignment_new(const uint32_t *labels,
                                size_t n,
                                size_t k,
                                struct MsAssignment **out_assignment);

// # Safety
// `a` must come from this library and not be freed twice. Null is a no-op.
void ms_assignment_free(struct MsAssignment *a);

// # Safety
// `a` must be a live handle or null.
size_t ms_assignment_n(const struct MsAssignment *a);

// # Safety
// `a` must be a live handle or null.
size_t ms_assignment_k(const struct MsAssignment *a);

// Copies the labels into `buf`, which must hold at least `ms_assignment_n(a)` values.
//
// # Safety
// `a` must be a live handle; `buf` must be writable for `len` values.
enum MsStatus ms_assignment_labels(const struct MsAssignment *a, uint32_t *buf, size_t len);

// Spectral clustering into `k` communities. `method` is one of
// `spA`, `hospA`, `spL`, `hospL`, `rspL`, `horspL` (case-insensitive).
//
// # Safety
// `g` must be a live handle, `method` a NUL-terminated string and
// `out_assignment` writable.
enum MsStatus ms_cluster(const struct MsGraph *g,
                         const char *method,
                         size_t k,
                         uint64_t seed,
                         struct MsAssignment **out_assignment);

// Fraction of vertices misclustered under the best relabeling of `est`.
//
// # Safety
// Both handles must be live; `out_rate` must be writable.
enum MsStatus ms_misclustering_rate(const struct MsAssignment *truth,
                                    const struct MsAssignment *est,
                                    double *out_rate);

// Edge-to-triangle density ratio estimated from a single graph.
//
// # Safety
// `g` must be a live handle; `out_delta` must be writable.
enum MsStatus ms_estimate_delta(const struct MsGraph *g, double *out_delta);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOTIFSPECTRA_H */
