#ifndef BIHOLE_H
#define BIHOLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Construction selector for `bh_construct`.
 */
typedef enum BhAlgorithm {
  BH_ALGORITHM_DELTA1 = 0,
  BH_ALGORITHM_PROFILE012 = 1,
  BH_ALGORITHM_AVG = 2,
  BH_ALGORITHM_AVG2 = 3,
  BH_ALGORITHM_BOUNDED = 4,
} BhAlgorithm;

/**
 * Base solver for the constructions that recurse into one.
 */
typedef enum BhBase {
  BH_BASE_AUTO = 0,
  BH_BASE_CERTIFIED = 1,
  BH_BASE_HEURISTIC = 2,
} BhBase;

/**
 * Result code of every fallible call.
 */
typedef enum BhStatus {
  BH_STATUS_OK = 0,
  BH_STATUS_NULL_POINTER = 1,
  BH_STATUS_INVALID_INPUT = 2,
  BH_STATUS_PARSE = 3,
  BH_STATUS_PRECONDITION = 4,
  BH_STATUS_CAP_EXCEEDED = 5,
  BH_STATUS_RETRIES_EXHAUSTED = 6,
  BH_STATUS_GUARANTEE_VIOLATED = 7,
  BH_STATUS_INTERNAL = 8,
} BhStatus;

/**
 * Opaque bihole handle.
 */
typedef struct BhBihole BhBihole;

/**
 * Opaque graph handle.
 */
typedef struct BhGraph BhGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into this library from the same thread.
 */
const char *bh_last_error(void);

/**
 * Builds a graph from `m` edges stored as `a0, b0, a1, b1, ...`.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (or be NULL when `m` is 0)
 * and `out` must be writable.
 */
enum BhStatus bh_graph_new(size_t n_a,
                           size_t n_b,
                           const size_t *edges,
                           size_t m,
                           struct BhGraph **out);

/**
 * Parses the text graph format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum BhStatus bh_graph_parse(const char *text, struct BhGraph **out);

/**
 * Writes the text form of `g` to `*out`; release it with `bh_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum BhStatus bh_graph_serialize(const struct BhGraph *g, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void bh_string_free(char *s);

/**
 * # Safety
 * `g` must come from this library and not be freed twice.
 */
void bh_graph_free(struct BhGraph *g);

/**
 * Side sizes and edge count; any out pointer may be NULL.
 *
 * # Safety
 * `g` must be a live handle; non-null out pointers must be writable.
 */
enum BhStatus bh_graph_size(const struct BhGraph *g, size_t *n_a, size_t *n_b, size_t *m);

/**
 * # Safety
 * `out` must be writable.
 */
enum BhStatus bh_gen_extremal_paths(size_t i, struct BhGraph **out);

/**
 * Random balanced graph with A-degrees at most `delta`, each edge kept
 * with probability `p_num / p_den`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BhStatus bh_gen_random_bounded(size_t n,
                                    size_t delta,
                                    int64_t p_num,
                                    int64_t p_den,
                                    uint64_t seed,
                                    struct BhGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum BhStatus bh_gen_random_edges(size_t n, size_t m, uint64_t seed, struct BhGraph **out);

/**
 * Whether `(s, t)` is a bihole of `g`.
 *
 * # Safety
 * `g` must be live, `s` and `t` readable for their lengths, `out` writable.
 */
enum BhStatus bh_is_bihole(const struct BhGraph *g,
                           const size_t *s,
                           size_t s_len,
                           const size_t *t,
                           size_t t_len,
                           bool *out);

/**
 * Maximum bihole by branch and bound. `node_budget` 0 means unlimited;
 * `optimal` reports whether the search finished.
 *
 * # Safety
 * `g` must be live and the out pointers writable.
 */
enum BhStatus bh_max_bihole(const struct BhGraph *g,
                            uint64_t node_budget,
                            struct BhBihole **out,
                            bool *optimal);

/**
 * Runs one construction. The proven lower bound is written as a fraction.
 *
 * # Safety
 * `g` must be live and the out pointers writable.
 */
enum BhStatus bh_construct(const struct BhGraph *g,
                           enum BhAlgorithm algorithm,
                           enum BhBase base,
                           struct BhBihole **out,
                           int64_t *guarantee_num,
                           int64_t *guarantee_den);

/**
 * Randomized pipeline for A-degrees at most 3. `retries` may be NULL.
 *
 * # Safety
 * `g` must be live and `out` writable.
 */
enum BhStatus bh_random3(const struct BhGraph *g,
                         int64_t eps_num,
                         int64_t eps_den,
                         uint64_t seed,
                         size_t max_retries,
                         struct BhBihole **out,
                         size_t *retries);

/**
 * # Safety
 * `b` must be a live handle or NULL.
 */
size_t bh_bihole_order(const struct BhBihole *b);

/**
 * Copies up to `cap` A-side vertices into `buf`; returns the full count.
 *
 * # Safety
 * `b` must be live or NULL; `buf` writable for `cap` values.
 */
size_t bh_bihole_s(const struct BhBihole *b, size_t *buf, size_t cap);

/**
 * Copies up to `cap` B-side vertices into `buf`; returns the full count.
 *
 * # Safety
 * `b` must be live or NULL; `buf` writable for `cap` values.
 */
size_t bh_bihole_t(const struct BhBihole *b, size_t *buf, size_t cap);

/**
 * # Safety
 * `b` must come from this library and not be freed twice.
 */
void bh_bihole_free(struct BhBihole *b);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIHOLE_H */
