#ifndef CRTOOL_H
#define CRTOOL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum CrtStatus {
  CRT_STATUS_OK = 0,
  CRT_STATUS_NULL_POINTER = 1,
  CRT_STATUS_INVALID_UTF8 = 2,
  /**
   * Schema, parse, or computation error; see `crt_last_error`.
   */
  CRT_STATUS_ERROR = 3,
  /**
   * A panic was caught at the boundary; see `crt_last_error`.
   */
  CRT_STATUS_PANIC = 4,
} CrtStatus;

/**
 * Opaque hypersurface model handle.
 */
typedef struct CrtModel CrtModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *crt_version(void);

/**
 * Message of the most recent error on this thread, or NULL. The caller
 * frees the returned string with `crt_string_free`.
 */
char *crt_last_error(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must have been returned by a crt_ function and not freed before.
 */
void crt_string_free(char *s);

/**
 * Parses a model from its JSON spec. On success writes an owned handle to
 * `out`; release it with `crt_model_free`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CrtStatus crt_model_parse(const char *json, struct CrtModel **out);

/**
 * Releases a model handle. NULL is ignored.
 *
 * # Safety
 * `model` must come from `crt_model_parse` and not be freed twice.
 */
void crt_model_free(struct CrtModel *model);

/**
 * Serializes a model back to its canonical JSON spec.
 *
 * # Safety
 * `model` and `out` must be valid pointers.
 */
enum CrtStatus crt_model_to_json(const struct CrtModel *model, char **out);

/**
 * Runs the 2-nondegeneracy check on a model. `out_pass` receives 1 when
 * all three certificates hold, else 0; `out_json` the full report.
 *
 * # Safety
 * All pointers must be valid.
 */
enum CrtStatus crt_model_check2nd(const struct CrtModel *model, char **out_json, int *out_pass);

/**
 * Runs any CLI command against a JSON task spec. `degree < 0` selects the
 * default bound; `out_verdict` receives 0 for pass, 1 for fail, 2 for
 * informational reports.
 *
 * # Safety
 * `command` and `spec_json` must be NUL-terminated strings; the out
 * pointers must be valid.
 */
enum CrtStatus crt_run(const char *command,
                       const char *spec_json,
                       int degree,
                       uint64_t seed,
                       char **out_json,
                       int *out_verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRTOOL_H */
