/* C interface to the isbv verification library.
 *
 * All strings returned through char** out-parameters are allocated by the
 * library and must be released with isbv_string_free. On failure a function
 * returns a nonzero status, leaves its outputs untouched and records a
 * message retrievable with isbv_last_error (per thread). */
#ifndef ISBV_H
#define ISBV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define ISBV_API __attribute__((visibility("default")))
#else
#define ISBV_API
#endif

typedef enum isbv_status {
  ISBV_OK = 0,
  ISBV_ERR_PARSE = 1,         /* malformed polynomial or JSON text */
  ISBV_ERR_SCHEMA = 2,        /* model file or config has missing, unknown or mistyped fields */
  ISBV_ERR_VALIDATION = 3,    /* model is well formed but inconsistent */
  ISBV_ERR_UNKNOWN_MODEL = 4,
  ISBV_ERR_UNKNOWN_CHECK = 5,
  ISBV_ERR_ARGUMENT = 6,      /* bad argument: null pointer, bad prime, bad mutation, ... */
  ISBV_ERR_BUDGET = 7,        /* Groebner step budget exhausted */
  ISBV_ERR_IO = 8,
  ISBV_ERR_INTERNAL = 9
} isbv_status;

typedef struct isbv_registry isbv_registry;

ISBV_API const char* isbv_version(void);
ISBV_API const char* isbv_status_string(isbv_status status);
/* Message of the last failed call on this thread; empty if none. */
ISBV_API const char* isbv_last_error(void);
ISBV_API void isbv_string_free(char* s);

/* Registry preloaded with the built-in models. */
ISBV_API isbv_status isbv_registry_create(isbv_registry** out);
ISBV_API void isbv_registry_destroy(isbv_registry* reg);
/* Adds the model stored in a JSON model file. */
ISBV_API isbv_status isbv_registry_load_file(isbv_registry* reg, const char* path);
ISBV_API size_t isbv_registry_size(const isbv_registry* reg);
/* One line per model: name, description and claim summary. */
ISBV_API isbv_status isbv_registry_list(const isbv_registry* reg, char** out_text);

/* Runs a verification described by a JSON config object, e.g.
 *   {"models": ["i-ii"], "checks": ["relations"], "field": "p:3", "jobs": 2}
 * Keys: models, all, checks, field, dmax, jobs, seed, budget, samples, format
 * (json | markdown), use_cache, cache_dir, allow_skip, mutations, stable.
 * The report is written to *out_report; *out_ok is 1 iff every check passed
 * (skipped checks are tolerated only with allow_skip). */
ISBV_API isbv_status isbv_verify(const isbv_registry* reg, const char* config_json, char** out_report, int* out_ok);

/* Relation space of the given degree derived from the sections alone, with
 * the stored equations expressed in its basis. *out_count receives the
 * number of independent relations (may be NULL). */
ISBV_API isbv_status isbv_derive(const isbv_registry* reg, const char* model, unsigned degree, char** out_text,
                                 size_t* out_count);

/* Point enumeration of a model over F_p. base_point is NULL for the whole
 * total space, or a comma-separated list of base coordinate values. With
 * singular_only set only the singular points are listed. *out_on_variety and
 * *out_singular receive the counts (either may be NULL). */
ISBV_API isbv_status isbv_enumerate(const isbv_registry* reg, const char* model, uint32_t p, const char* base_point,
                                    int singular_only, unsigned threads, char** out_text, uint64_t* out_on_variety,
                                    uint64_t* out_singular);

#ifdef __cplusplus
}
#endif

#endif
