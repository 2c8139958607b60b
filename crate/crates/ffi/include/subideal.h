#ifndef SUBIDEAL_H
#define SUBIDEAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SubidealStatus {
  SUBIDEAL_STATUS_OK = 0,
  SUBIDEAL_STATUS_NULL_POINTER = 1,
  SUBIDEAL_STATUS_SYNTAX = 2,
  SUBIDEAL_STATUS_DOMAIN = 3,
  SUBIDEAL_STATUS_PRECONDITION = 4,
  SUBIDEAL_STATUS_ARGUMENT = 5,
  SUBIDEAL_STATUS_UTF8 = 6,
  SUBIDEAL_STATUS_PANIC = 7,
} SubidealStatus;

typedef enum SubidealOutcome {
  SUBIDEAL_OUTCOME_YES = 0,
  SUBIDEAL_OUTCOME_NO = 1,
  SUBIDEAL_OUTCOME_UNKNOWN = 2,
} SubidealOutcome;

/**
 * Opaque ideal description.
 */
typedef struct SubidealIdeal SubidealIdeal;

/**
 * Opaque sequence expression.
 */
typedef struct SubidealSeq SubidealSeq;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *subideal_last_error(void);

/**
 * Parses a sequence expression such as `amp(2,pow(1))`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SubidealStatus subideal_seq_parse(const char *text, struct SubidealSeq **out);

/**
 * # Safety
 * `seq` must come from [`subideal_seq_parse`] and not be freed twice.
 */
void subideal_seq_free(struct SubidealSeq *seq);

/**
 * Parses an ideal description such as `prod(prin(pow(1)),KH)`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SubidealStatus subideal_ideal_parse(const char *text, struct SubidealIdeal **out);

/**
 * # Safety
 * `ideal` must come from [`subideal_ideal_parse`] and not be freed twice.
 */
void subideal_ideal_free(struct SubidealIdeal *ideal);

/**
 * Canonical text form of a sequence; free with [`subideal_string_free`].
 *
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
enum SubidealStatus subideal_seq_render(const struct SubidealSeq *seq, char **out);

/**
 * Decides whether `diag(seq)` lies in `ideal`.
 *
 * # Safety
 * `seq` and `ideal` must be live handles; `out` must be writable.
 */
enum SubidealStatus subideal_member(const struct SubidealSeq *seq,
                                    const struct SubidealIdeal *ideal,
                                    enum SubidealOutcome *out);

/**
 * Decides whether the principal ideal generated by `seq` is soft in
 * `ideal`. On Yes, `*k_out` receives the ampliation order of the witness
 * (0 otherwise); `k_out` may be NULL.
 *
 * # Safety
 * `seq` and `ideal` must be live handles; `out` must be writable.
 */
enum SubidealStatus subideal_is_soft(const struct SubidealSeq *seq,
                                     const struct SubidealIdeal *ideal,
                                     enum SubidealOutcome *out,
                                     uint64_t *k_out);

/**
 * Subideal classification report as JSON; free with
 * [`subideal_string_free`].
 *
 * # Safety
 * `seq` and `ideal` must be live handles; `out` must be writable.
 */
enum SubidealStatus subideal_classify_json(const struct SubidealSeq *seq,
                                           const struct SubidealIdeal *ideal,
                                           char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void subideal_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBIDEAL_H */
