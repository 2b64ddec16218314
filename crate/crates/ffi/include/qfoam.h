#ifndef QFOAM_H
#define QFOAM_H

/* Generated by build.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QfoamStatus {
  QFOAM_STATUS_OK = 0,
  /**
   * The input was well formed but a check failed.
   */
  QFOAM_STATUS_FAILED = 1,
  /**
   * The input could not be parsed or is inconsistent.
   */
  QFOAM_STATUS_INVALID = 2,
  QFOAM_STATUS_NULL_POINTER = 3,
  /**
   * An output buffer was too small.
   */
  QFOAM_STATUS_BUFFER_TOO_SMALL = 4,
} QfoamStatus;

typedef struct QfoamCocycle QfoamCocycle;

typedef struct QfoamFamily QfoamFamily;

typedef struct QfoamMovie QfoamMovie;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread. Valid until the next call.
 */
const char *qfoam_last_error(void);

/**
 * `name` is `r-tilde`, `trivial` or `linear:<p>:<u,u,...>`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum QfoamStatus qfoam_family_builtin(const char *name, struct QfoamFamily **out);

/**
 * # Safety
 * `src` must be a NUL-terminated string and `out` a writable pointer.
 */
enum QfoamStatus qfoam_family_parse(const char *src, struct QfoamFamily **out);

/**
 * # Safety
 * `f` must come from a family constructor and not be used afterwards.
 */
void qfoam_family_free(struct QfoamFamily *f);

/**
 * Returns `Ok` when every axiom holds and `Failed` otherwise.
 *
 * # Safety
 * `f` must be a live family handle.
 */
enum QfoamStatus qfoam_family_check_axioms(const struct QfoamFamily *f);

/**
 * `name` is `mochizuki` or `zero`.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `f` a live family handle and
 * `out` a writable pointer.
 */
enum QfoamStatus qfoam_cocycle_builtin(const char *name,
                                       const struct QfoamFamily *f,
                                       struct QfoamCocycle **out);

/**
 * # Safety
 * `src` must be a NUL-terminated string, `f` a live family handle and
 * `out` a writable pointer.
 */
enum QfoamStatus qfoam_cocycle_parse(const char *src,
                                     const struct QfoamFamily *f,
                                     struct QfoamCocycle **out);

/**
 * # Safety
 * `c` must come from a cocycle constructor and not be used afterwards.
 */
void qfoam_cocycle_free(struct QfoamCocycle *c);

/**
 * Runs both the cocycle conditions and the oriented conditions.
 *
 * # Safety
 * Both handles must be live.
 */
enum QfoamStatus qfoam_cocycle_verify(const struct QfoamFamily *f, const struct QfoamCocycle *c);

/**
 * # Safety
 * `src` must be a NUL-terminated string, `f` a live family handle and
 * `count` writable.
 */
enum QfoamStatus qfoam_graph_coloring_count(const char *src,
                                            const struct QfoamFamily *f,
                                            uint64_t *count);

/**
 * Parses and validates a movie. `still ref` designations are not checked
 * here since there is no file system context.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a writable pointer.
 */
enum QfoamStatus qfoam_movie_parse(const char *src, struct QfoamMovie **out);

/**
 * # Safety
 * `m` must come from `qfoam_movie_parse` and not be used afterwards.
 */
void qfoam_movie_free(struct QfoamMovie *m);

/**
 * Number of events, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live movie handle.
 */
size_t qfoam_movie_event_count(const struct QfoamMovie *m);

/**
 * Writes the multiplicity of each value 0..modulus into `counts`; `len`
 * is the capacity and `written` receives the modulus.
 *
 * # Safety
 * Handles must be live, `counts` must hold `len` values and `written` be
 * writable.
 */
enum QfoamStatus qfoam_movie_invariant(const struct QfoamMovie *m,
                                       const struct QfoamFamily *f,
                                       const struct QfoamCocycle *c,
                                       uint64_t *counts,
                                       size_t len,
                                       size_t *written);

/**
 * Movie text of the n-twist spin of a tangle; free it with
 * `qfoam_string_free`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum QfoamStatus qfoam_twist_spin(const char *src, uint32_t n, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qfoam_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QFOAM_H */
