#ifndef NALAB_H
#define NALAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NALAB_API __declspec(dllexport)
#else
#define NALAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Library error kinds map onto NALAB_ERR_* with the detailed
   kind name available from nalab_last_error_kind(). */
typedef enum nalab_status {
  NALAB_OK = 0,
  NALAB_ERR_INVALID_ARGUMENT = 1,
  NALAB_ERR_PARSE = 2,
  NALAB_ERR_SCHEMA = 3,
  NALAB_ERR_UNKNOWN_KIND = 4,
  NALAB_ERR_TOO_LARGE = 5,
  NALAB_ERR_LIBRARY = 6,
  NALAB_ERR_INTERNAL = 7
} nalab_status;

typedef struct nalab_recipe nalab_recipe;
typedef struct nalab_ring nalab_ring;

typedef enum nalab_expect { NALAB_EXPECT_NONE = 0, NALAB_EXPECT_SIMPLE = 1, NALAB_EXPECT_NOT_SIMPLE = 2 } nalab_expect;

typedef enum nalab_simplicity {
  NALAB_SIMPLE = 0,
  NALAB_NOT_SIMPLE = 1,
  NALAB_INCONCLUSIVE = 2
} nalab_simplicity;

typedef struct nalab_options {
  uint64_t seed;
  uint64_t cap;             /* 0 keeps the default enumeration cap */
  nalab_expect expect;
  const char* checks;       /* comma separated, NULL for the default */
  int force;                /* print tables above the threshold */
  int timings;              /* include wall-clock timings */
  int text;                 /* render as text instead of JSON */
} nalab_options;

/* Fills defaults: seed 0xC0FFEE, default cap, no expectation. */
NALAB_API void nalab_options_init(nalab_options* opts);

NALAB_API const char* nalab_version(void);

/* Message of the last failure on this thread, or "" */
NALAB_API const char* nalab_last_error(void);
/* Library error kind of the last failure (e.g. "SchemaError"), or "" */
NALAB_API const char* nalab_last_error_kind(void);
/* JSON witness of the last failure, or "null" */
NALAB_API const char* nalab_last_error_witness(void);

NALAB_API nalab_status nalab_recipe_parse(const char* text, nalab_recipe** out);
NALAB_API nalab_status nalab_recipe_load(const char* path, nalab_recipe** out);
NALAB_API void nalab_recipe_free(nalab_recipe* r);

/* Runs build, table, check or certify. On NALAB_OK, *report receives a
   string owned by the caller (release with nalab_string_free) and
   *exit_code the command's exit status (0 ok, 1 failed expectation or
   disagreement). */
NALAB_API nalab_status nalab_run(const char* command, const nalab_recipe* recipe, const nalab_options* opts,
                                 char** report, int* exit_code);
NALAB_API nalab_status nalab_corpus(const nalab_options* opts, char** report, int* exit_code);

/* Renders an error report for a failed call, in the requested format. */
NALAB_API char* nalab_error_report(const char* command, const nalab_options* opts);

NALAB_API void nalab_string_free(char* s);

NALAB_API nalab_status nalab_ring_build(const nalab_recipe* recipe, nalab_ring** out);
NALAB_API void nalab_ring_free(nalab_ring* r);
/* Number of elements, or 0 for an infinite ring. */
NALAB_API uint64_t nalab_ring_size(const nalab_ring* r);
/* Vector space dimension, or 0 for a table ring. */
NALAB_API size_t nalab_ring_dimension(const nalab_ring* r);
NALAB_API nalab_status nalab_ring_is_simple(const nalab_ring* r, const nalab_options* opts, nalab_simplicity* out);

#ifdef __cplusplus
}
#endif

#endif
