#ifndef TRICERT_H
#define TRICERT_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bit flags for [`tricert_certify`].
 */
#define TRICERT_BASIC 1

#define TRICERT_NO_SPARSIFY 2

typedef enum TricertStatus {
  TRICERT_STATUS_OK = 0,
  /**
   * The graph is not 3-connected, or a certificate was rejected.
   */
  TRICERT_STATUS_NO = 1,
  TRICERT_STATUS_NULL_ARGUMENT = 2,
  TRICERT_STATUS_INVALID_UTF8 = 3,
  TRICERT_STATUS_PARSE_FAILED = 4,
  TRICERT_STATUS_INVALID_ARGUMENT = 5,
  TRICERT_STATUS_INTERNAL = 6,
} TricertStatus;

/**
 * Targets for [`tricert_transform`].
 */
typedef enum TricertTarget {
  TRICERT_TARGET_BASIC = 0,
  TRICERT_TARGET_NONBASIC = 1,
  TRICERT_TARGET_EDGE = 2,
  TRICERT_TARGET_PATH = 3,
  TRICERT_TARGET_CONTRACTIONS = 4,
} TricertTarget;

/**
 * Opaque graph.
 */
typedef struct TricertGraph TricertGraph;

/**
 * Opaque outcome of [`tricert_certify`].
 */
typedef struct TricertResult TricertResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call on the same thread.
 */
const char *tricert_last_error(void);

/**
 * Parses an edge list or DIMACS text.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TricertStatus tricert_graph_parse(const char *src, struct TricertGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from [`tricert_graph_parse`] not yet freed.
 */
void tricert_graph_free(struct TricertGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
uintptr_t tricert_graph_node_count(const struct TricertGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
uintptr_t tricert_graph_edge_count(const struct TricertGraph *g);

/**
 * Certifies `g`. Returns `Ok` with a certificate or `No` with a witness;
 * either way `out` receives a result handle.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum TricertStatus tricert_certify(const struct TricertGraph *g,
                                   uint32_t flags,
                                   struct TricertResult **out);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
void tricert_result_free(struct TricertResult *r);

/**
 * 1 if the result is a certificate, 0 if it is a witness.
 *
 * # Safety
 * `r` must be a live result handle.
 */
int32_t tricert_result_is_certified(const struct TricertResult *r);

/**
 * Text of the certificate or witness. With `edge_rep` nonzero a
 * certificate is written as an edge representation.
 *
 * # Safety
 * `r` must be a live result handle and `out` a valid pointer.
 */
enum TricertStatus tricert_result_text(const struct TricertResult *r, int32_t edge_rep, char **out);

/**
 * Checks a certificate, edge representation or witness against `g`.
 * Returns `Ok` if accepted, `No` if rejected with the reason in
 * [`tricert_last_error`], `ParseFailed` if the document is malformed.
 *
 * # Safety
 * `g` must be a live graph handle and `doc` a NUL-terminated string.
 */
enum TricertStatus tricert_verify(const struct TricertGraph *g, const char *doc, int32_t basic);

/**
 * Converts a certificate to another form. `g` may be null, in which case
 * a path certificate refers to the graph its own edges span.
 *
 * # Safety
 * `g` must be null or a live graph handle, `doc` a NUL-terminated string
 * and `out` a valid pointer.
 */
enum TricertStatus tricert_transform(const struct TricertGraph *g,
                                     const char *doc,
                                     enum TricertTarget target,
                                     char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void tricert_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TRICERT_H */
