#ifndef GAUDIN_C_H
#define GAUDIN_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GAUDIN_API __declspec(dllexport)
#else
#define GAUDIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gaudin_status {
  GAUDIN_OK = 0,
  GAUDIN_VERIFICATION_FAILED = 1, /* the report was produced but a check failed */
  GAUDIN_INPUT_ERROR = 2,         /* parse errors, invalid models, out-of-range arguments */
  GAUDIN_NUMERICAL_ERROR = 3,     /* diagonalization or completeness failure */
  GAUDIN_INTERNAL_ERROR = 4
} gaudin_status;

typedef enum gaudin_format { GAUDIN_FORMAT_JSON = 0, GAUDIN_FORMAT_CSV = 1 } gaudin_format;

typedef struct gaudin_model gaudin_model;

/* Negative values mean "not set" for m, m_max and site; site is 1-based.
   Zero tolerances select the library defaults; seed is used only when
   has_seed is nonzero. */
typedef struct gaudin_options {
  int m;
  int m_max;
  int site;
  double tol;
  double tol_rank;
  double tol_root;
  double dedup_tol;
  uint64_t seed;
  int has_seed;
  gaudin_format format;
  int inject_fault;
} gaudin_options;

GAUDIN_API void gaudin_options_init(gaudin_options* opts);

GAUDIN_API gaudin_status gaudin_model_from_json(const char* json, gaudin_model** out);
GAUDIN_API gaudin_status gaudin_model_from_file(const char* path, gaudin_model** out);
GAUDIN_API void gaudin_model_free(gaudin_model* model);
GAUDIN_API size_t gaudin_model_sites(const gaudin_model* model);

/* Each command writes a heap string to *report (free with gaudin_string_free)
   and, if summary is non-null, a one-line summary to *summary. Outputs are
   left null when the command fails before producing a report. */
GAUDIN_API gaudin_status gaudin_decompose(const gaudin_model* model, const gaudin_options* opts, char** report,
                                          char** summary);
GAUDIN_API gaudin_status gaudin_verify(const gaudin_model* model, const gaudin_options* opts, char** report,
                                       char** summary);
GAUDIN_API gaudin_status gaudin_hamiltonian(const gaudin_model* model, const gaudin_options* opts, char** report,
                                            char** summary);
GAUDIN_API gaudin_status gaudin_singular(const gaudin_model* model, const gaudin_options* opts, char** report,
                                         char** summary);
GAUDIN_API gaudin_status gaudin_eigenbasis(const gaudin_model* model, const gaudin_options* opts, char** report,
                                           char** summary);
GAUDIN_API gaudin_status gaudin_bethe(const gaudin_model* model, const gaudin_options* opts, char** report,
                                      char** summary);

GAUDIN_API void gaudin_string_free(char* s);

/* Message of the last failure on the calling thread; empty after success. */
GAUDIN_API const char* gaudin_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
