#ifndef MATSLOCC_H
#define MATSLOCC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MatsloccStatus {
  MATSLOCC_STATUS_OK = 0,
  MATSLOCC_STATUS_NULL_POINTER = 1,
  MATSLOCC_STATUS_INVALID_UTF8 = 2,
  MATSLOCC_STATUS_PARSE = 3,
  MATSLOCC_STATUS_INVALID_ARGUMENT = 4,
  MATSLOCC_STATUS_SIZE_GUARD = 5,
  MATSLOCC_STATUS_FAILED = 6,
  MATSLOCC_STATUS_PANIC = 7,
} MatsloccStatus;

/**
 * Opaque matrix space.
 */
typedef struct MatsloccSpace MatsloccSpace;

/**
 * Opaque tripartite state.
 */
typedef struct MatsloccState MatsloccState;

/**
 * Settings for randomized computations. `prime = 0` selects the default.
 */
typedef struct MatsloccConfig {
  uint64_t seed;
  uint32_t trials;
  uint64_t prime;
  uint64_t size_guard;
} MatsloccConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Seed 0, 16 trials, default prime and size guard.
 */
struct MatsloccConfig matslocc_config_default(void);

/**
 * Message for the last failed call on this thread, or NULL. Owned by the
 * library.
 */
const char *matslocc_last_error(void);

/**
 * # Safety
 * `json` must be a nul-terminated string and `out_space` writable.
 */
enum MatsloccStatus matslocc_space_from_json(const char *json, struct MatsloccSpace **out_space);

/**
 * # Safety
 * `space` must come from `matslocc_space_from_json` and not be used again.
 */
void matslocc_space_free(struct MatsloccSpace *space);

/**
 * # Safety
 * `space` must be a live handle; the out pointers must be writable.
 */
enum MatsloccStatus matslocc_space_shape(const struct MatsloccSpace *space,
                                         size_t *rows,
                                         size_t *cols,
                                         size_t *dim);

/**
 * Randomized maximal rank.
 *
 * # Safety
 * `space` must be a live handle and `rank` writable.
 */
enum MatsloccStatus matslocc_space_max_rank(const struct MatsloccSpace *space,
                                            struct MatsloccConfig config,
                                            size_t *rank);

/**
 * Whether a square space has a shrunk subspace.
 *
 * # Safety
 * `space` must be a live handle and `has_shrunk` writable.
 */
enum MatsloccStatus matslocc_space_has_shrunk(const struct MatsloccSpace *space,
                                              struct MatsloccConfig config,
                                              bool *has_shrunk);

/**
 * # Safety
 * `json` must be a nul-terminated string and `out_state` writable.
 */
enum MatsloccStatus matslocc_state_from_json(const char *json, struct MatsloccState **out_state);

/**
 * # Safety
 * `state` must come from `matslocc_state_from_json` and not be used again.
 */
void matslocc_state_free(struct MatsloccState *state);

/**
 * Randomized maximal Schmidt rank of `copies` copies of the state.
 *
 * # Safety
 * `state` must be a live handle and `rank` writable.
 */
enum MatsloccStatus matslocc_state_msrk(const struct MatsloccState *state,
                                        uint32_t copies,
                                        struct MatsloccConfig config,
                                        size_t *rank);

/**
 * Maximal rank of `A(p, q, d)^{⊗copies}` as a decimal string, released
 * with `matslocc_string_free`.
 *
 * # Safety
 * `decimal` must be writable.
 */
enum MatsloccStatus matslocc_compression_power(size_t p,
                                               size_t q,
                                               size_t d,
                                               uint32_t copies,
                                               char **decimal);

/**
 * Asymptotic growth rate of the maximal rank of `A(p, q, d)^{⊗n}`.
 *
 * # Safety
 * `value` must be writable.
 */
enum MatsloccStatus matslocc_compression_asymptotic(size_t p, size_t q, size_t d, double *value);

/**
 * # Safety
 * `s` must come from this library and not be used again.
 */
void matslocc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATSLOCC_H */
