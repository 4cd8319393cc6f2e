/*
 * Copyright 2026 The Lifeguard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the lifeguard analyses.
 *
 * Objects are opaque handles created by the *_parse / *_load functions and
 * released with the matching *_free. Every function returning lg_status
 * sets a thread-local message readable with lg_last_error() on failure.
 * Strings returned through char** are owned by the caller and released with
 * lg_string_free().
 */
#ifndef LIFEGUARD_H
#define LIFEGUARD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LG_API __declspec(dllexport)
#else
#define LG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lg_trace lg_trace;
typedef struct lg_spec lg_spec;
typedef struct lg_program lg_program;
typedef struct lg_report lg_report;

typedef enum lg_status {
  LG_OK = 0,
  LG_ERR_INVALID_ARGUMENT = 1,
  LG_ERR_IO = 2,
  LG_ERR_PARSE = 3,
  LG_ERR_TRACE = 4,     /* trace invariants broken */
  LG_ERR_GROUNDING = 5, /* instance cap exceeded */
  LG_ERR_SCHEDULE = 6,
  LG_ERR_SHAPE = 7,     /* framework pairing shape */
  LG_ERR_INTERNAL = 8
} lg_status;

/* PASS: valid / Safe / finished. FAIL: invalid / Violation / bad.
 * UNKNOWN: Unknown, timeout, budget exhausted, stuck. */
typedef enum lg_verdict { LG_PASS = 0, LG_FAIL = 1, LG_UNKNOWN = 2 } lg_verdict;

typedef enum lg_format { LG_FORMAT_TEXT = 0, LG_FORMAT_JSON = 1 } lg_format;

typedef struct lg_options {
  size_t grounding_cap;   /* default 200000 */
  size_t state_cap;       /* default 5000000, or LIFEGUARD_STATE_CAP */
  double timeout_seconds; /* <= 0: no timeout */
  size_t bound;           /* verify: 0 = exhaustive, else max callback units */
  int with_stats;         /* verify text report: include exploration counters */
} lg_options;

LG_API void lg_options_init(lg_options* o);

LG_API const char* lg_version(void);
LG_API const char* lg_last_error(void);
LG_API const char* lg_status_name(lg_status s);
LG_API void lg_string_free(char* s);

LG_API lg_status lg_trace_parse(const char* text, size_t len, lg_trace** out);
LG_API lg_status lg_trace_load(const char* path, lg_trace** out);
LG_API size_t lg_trace_length(const lg_trace* t);
LG_API lg_status lg_trace_serialize(const lg_trace* t, char** out);
LG_API void lg_trace_free(lg_trace* t);

LG_API lg_status lg_spec_parse(const char* text, size_t len, lg_spec** out);
LG_API lg_status lg_spec_load(const char* path, lg_spec** out);
LG_API size_t lg_spec_rule_count(const lg_spec* s);
LG_API void lg_spec_free(lg_spec* s);

LG_API lg_status lg_program_parse(const char* text, size_t len, lg_program** out);
LG_API lg_status lg_program_load(const char* path, lg_program** out);
/* init may be NULL for the default "boot". */
LG_API lg_status lg_program_check_shape(const lg_program* p, const char* init);
LG_API void lg_program_free(lg_program* p);

/* schedule: comma-separated event indices, used when seed is NULL. */
LG_API lg_status lg_run(const lg_program* p, const char* schedule, const uint64_t* seed,
                        size_t max_steps, lg_report** out);
LG_API lg_status lg_validate(const lg_spec* s, const lg_trace* t, const lg_options* o,
                             lg_report** out);
/* Validates every *.trace file below dir, using up to jobs threads. */
LG_API lg_status lg_validate_corpus(const lg_spec* s, const char* dir, unsigned jobs,
                                    const lg_options* o, lg_report** out);
LG_API lg_status lg_verify(const lg_spec* s, const lg_trace* t, const lg_options* o,
                           lg_report** out);
LG_API lg_status lg_ground(const lg_spec* s, const lg_trace* t, const lg_options* o,
                           lg_report** out);
LG_API lg_status lg_explain(const lg_spec* s, const lg_trace* t, const lg_options* o,
                            lg_report** out);

LG_API lg_verdict lg_report_verdict(const lg_report* r);
LG_API lg_status lg_report_render(const lg_report* r, lg_format f, char** out);
/* run: the emitted trace; verify: the witness. Otherwise LG_ERR_INVALID_ARGUMENT. */
LG_API lg_status lg_report_trace(const lg_report* r, lg_trace** out);
LG_API void lg_report_free(lg_report* r);

#ifdef __cplusplus
}
#endif

#endif /* LIFEGUARD_H */
