#ifndef FIXCAT_H
#define FIXCAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FixcatStatus {
  FIXCAT_STATUS_OK = 0,
  /**
   * A law or axiom failed; the result is still produced.
   */
  FIXCAT_STATUS_LAW_VIOLATION = 1,
  /**
   * Malformed input, schema errors, unresolved ids, bad configs.
   */
  FIXCAT_STATUS_INVALID_INPUT = 2,
  FIXCAT_STATUS_NULL_POINTER = 3,
  /**
   * An internal panic was caught at the boundary.
   */
  FIXCAT_STATUS_INTERNAL = 4,
} FixcatStatus;

/**
 * A parsed input document.
 */
typedef struct FixcatDocument FixcatDocument;

/**
 * The outcome of a law-suite run.
 */
typedef struct FixcatSuiteReport FixcatSuiteReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *fixcat_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void fixcat_string_free(char *s);

/**
 * Parses a JSON document into `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum FixcatStatus fixcat_document_parse(const char *text, struct FixcatDocument **out);

/**
 * # Safety
 * `doc` must come from [`fixcat_document_parse`] and not have been freed.
 */
void fixcat_document_free(struct FixcatDocument *doc);

/**
 * The `"kind"` of a document, as a new string; NULL on a null handle.
 *
 * # Safety
 * `doc` must be a live handle or NULL.
 */
char *fixcat_document_kind(const struct FixcatDocument *doc);

/**
 * The canonical text of a document, as a new string; NULL on a null handle.
 *
 * # Safety
 * `doc` must be a live handle or NULL.
 */
char *fixcat_document_print(const struct FixcatDocument *doc);

/**
 * The fixpoint of the endomorphism in `doc` (a monotone map, multiset
 * relation, ideal relation or endofunctor), written to `*out` as a new string.
 *
 * # Safety
 * `doc` must be a live handle; `out` must be writable.
 */
enum FixcatStatus fixcat_star(const struct FixcatDocument *doc, size_t max_steps, char **out);

/**
 * Runs the law suite described by a `suite-config` document (NULL for the
 * default suite). Returns `FIXCAT_STATUS_LAW_VIOLATION` if some law failed;
 * the report is written to `*out` in that case too.
 *
 * # Safety
 * `config` must be a live handle or NULL; `out` must be writable.
 */
enum FixcatStatus fixcat_run_laws(const struct FixcatDocument *config,
                                  struct FixcatSuiteReport **out);

/**
 * Number of law reports; 0 on a null handle.
 *
 * # Safety
 * `r` must be a live handle or NULL.
 */
size_t fixcat_report_len(const struct FixcatSuiteReport *r);

/**
 * Whether every law passed; false on a null handle.
 *
 * # Safety
 * `r` must be a live handle or NULL.
 */
bool fixcat_report_passed(const struct FixcatSuiteReport *r);

/**
 * The whole report as JSON, as a new string; NULL on a null handle.
 *
 * # Safety
 * `r` must be a live handle or NULL.
 */
char *fixcat_report_json(const struct FixcatSuiteReport *r);

/**
 * # Safety
 * `r` must come from [`fixcat_run_laws`] and not have been freed.
 */
void fixcat_report_free(struct FixcatSuiteReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIXCAT_H */
