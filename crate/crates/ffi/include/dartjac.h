#ifndef DARTJAC_H
#define DARTJAC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Call status. Values 0 to 4 match the command-line exit codes.
 */
typedef enum DjStatus {
  DJ_STATUS_OK = 0,
  /*
   A verification suite reported a failing case.
   */
  DJ_STATUS_VERIFICATION_FAILED = 1,
  /*
   Malformed input: parse errors, invalid graphs, groups or arguments.
   */
  DJ_STATUS_INVALID_INPUT = 2,
  /*
   Input is well formed but violates a precondition, such as connectivity.
   */
  DJ_STATUS_PRECONDITION = 3,
  /*
   A configured scale cap was exceeded.
   */
  DJ_STATUS_SCALE_EXCEEDED = 4,
  DJ_STATUS_NULL_POINTER = 5,
  /*
   A Rust panic was caught at the boundary.
   */
  DJ_STATUS_INTERNAL = 6,
} DjStatus;

/*
 Opaque graph handle.
 */
typedef struct DjGraph DjGraph;

/*
 Opaque Jacobian handle.
 */
typedef struct DjJacobian DjJacobian;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or an empty string.
 The pointer stays valid until the next call on the same thread.
 */
const char *dj_last_error(void);

/*
 Library version as a static string.
 */
const char *dj_version(void);

/*
 Release a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void dj_string_free(char *s);

/*
 Parse a graph from its JSON form `{"darts", "lambda", "vertices"}`.

 # Safety
 `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum DjStatus dj_graph_from_json(const char *json, struct DjGraph **out);

/*
 Release a graph. Null is ignored.

 # Safety
 `g` must come from [`dj_graph_from_json`] and not be freed twice.
 */
void dj_graph_free(struct DjGraph *g);

/*
 Number of vertices, or 0 for a null handle.

 # Safety
 `g` must be null or a live graph handle.
 */
uintptr_t dj_graph_vertex_count(const struct DjGraph *g);

/*
 Number of darts, or 0 for a null handle.

 # Safety
 `g` must be null or a live graph handle.
 */
uintptr_t dj_graph_dart_count(const struct DjGraph *g);

/*
 Spanning tree count as a decimal string.

 # Safety
 `g` must be a live graph handle and `out` a valid pointer.
 */
enum DjStatus dj_spanning_tree_count(const struct DjGraph *g, char **out);

/*
 Order of the automorphism group, searching graphs of at most
 `max_vertices` vertices.

 # Safety
 `g` must be a live graph handle and `out` a valid pointer.
 */
enum DjStatus dj_automorphism_order(const struct DjGraph *g,
                                    uintptr_t max_vertices,
                                    uintptr_t *out);

/*
 Compute the Jacobian and its J-flow.

 # Safety
 `g` must be a live graph handle and `out` a valid pointer.
 */
enum DjStatus dj_jacobian(const struct DjGraph *g, struct DjJacobian **out);

/*
 Release a Jacobian. Null is ignored.

 # Safety
 `j` must come from [`dj_jacobian`] and not be freed twice.
 */
void dj_jacobian_free(struct DjJacobian *j);

/*
 Number of invariant factors, or 0 for a null handle.

 # Safety
 `j` must be null or a live Jacobian handle.
 */
uintptr_t dj_jacobian_rank(const struct DjJacobian *j);

/*
 Invariant factor `index` as a decimal string.

 # Safety
 `j` must be a live Jacobian handle and `out` a valid pointer.
 */
enum DjStatus dj_jacobian_factor(const struct DjJacobian *j, uintptr_t index, char **out);

/*
 Group order as a decimal string.

 # Safety
 `j` must be a live Jacobian handle and `out` a valid pointer.
 */
enum DjStatus dj_jacobian_order(const struct DjJacobian *j, char **out);

/*
 Full report as JSON: factors, order, rank and the flow value of each
 positive dart.

 # Safety
 `j` must be a live Jacobian handle and `out` a valid pointer.
 */
enum DjStatus dj_jacobian_json(const struct DjJacobian *j, char **out);

/*
 Run a verification suite by name and write its JSON report. A `count` of
 0 uses the suite default. Returns `VerificationFailed` when a case fails;
 the report is written either way.

 # Safety
 `suite` must be a nul-terminated string and `out` a valid pointer.
 */
enum DjStatus dj_verify_suite(const char *suite, uint64_t seed, uintptr_t count, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DARTJAC_H */
