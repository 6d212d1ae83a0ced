/*
 * coword — co-word topic clustering toolkit, C interface.
 *
 * The shared library exposes the pipeline through opaque handles and
 * integer status codes. A session wraps one loaded configuration; stages
 * read and write artifacts in the configured output directory. On failure,
 * functions return a nonzero status and, when `err` is non-NULL, store an
 * error handle the caller must free with coword_error_free().
 */
#ifndef COWORD_H
#define COWORD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COWORD_API __declspec(dllexport)
#else
#define COWORD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status classes; these double as CLI exit codes. */
typedef enum coword_status {
  COWORD_OK = 0,
  COWORD_ERROR_CONFIG = 2,
  COWORD_ERROR_DATA = 3,
  COWORD_ERROR_INTERNAL = 4
} coword_status;

typedef struct coword_session coword_session;
typedef struct coword_error coword_error;

COWORD_API const char* coword_version(void);
COWORD_API uint32_t coword_abi_version(void);

/* Loads and validates a configuration file. */
COWORD_API coword_status coword_session_open(const char* config_path, coword_session** out,
                                             coword_error** err);
COWORD_API void coword_session_close(coword_session* session);

COWORD_API coword_status coword_session_set_threads(coword_session* session, int threads,
                                                    coword_error** err);
/* Replaces the configured cut list (k values, strictly ascending). */
COWORD_API coword_status coword_session_set_cuts(coword_session* session, const int* ks,
                                                 size_t count, coword_error** err);

/* Full pipeline: ingest through charts plus a checksum manifest. */
COWORD_API coword_status coword_run(coword_session* session, coword_error** err);

/* One stage: ingest | extract | similarity | cluster | cut | label |
 * trends | chart. */
COWORD_API coword_status coword_run_stage(coword_session* session, const char* stage,
                                          coword_error** err);

/* trends over an explicit assignment artifact (cut or topic report). */
COWORD_API coword_status coword_trends_from_assignment(coword_session* session,
                                                       const char* assignment_path,
                                                       coword_error** err);

/* One chart from an explicit trends CSV; mode is "counts" or "percent". */
COWORD_API coword_status coword_chart_from_table(coword_session* session, const char* table_csv,
                                                 const char* mode, const char* out_svg,
                                                 coword_error** err);

/* Digest of the session's analysis parameters (hex string owned by the
 * session). */
COWORD_API const char* coword_session_config_digest(const coword_session* session);

/* Error introspection. */
COWORD_API int coword_error_status(const coword_error* err);
COWORD_API const char* coword_error_name(const coword_error* err); /* e.g. "DUPLICATE_ID" */
COWORD_API const char* coword_error_message(const coword_error* err);
COWORD_API void coword_error_free(coword_error* err);

#ifdef __cplusplus
}
#endif

#endif /* COWORD_H */
