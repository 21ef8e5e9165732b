// Copyright 2026 The Dutchbook Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUTCHBOOK_DUTCHBOOK_H_
#define DUTCHBOOK_DUTCHBOOK_H_

#include <stdint.h>

#if defined(DBK_BUILDING_LIBRARY)
#define DBK_API __attribute__((visibility("default")))
#else
#define DBK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Result of every call. DBK_OK and DBK_NEGATIVE both produce a report;
 * the other codes leave a JSON error object in dbk_last_error(). */
typedef enum dbk_status {
  DBK_OK = 0,
  DBK_NEGATIVE = 1,
  DBK_INVALID_INPUT = 2,
  DBK_DOMAIN = 3,
  DBK_INDETERMINATE = 4,
  DBK_PRECONDITION = 5,
  DBK_UNSUPPORTED = 6,
  DBK_INTERNAL = 7
} dbk_status;

typedef struct dbk_env dbk_env;
typedef struct dbk_beliefs dbk_beliefs;
typedef struct dbk_lcps dbk_lcps;
typedef struct dbk_cps dbk_cps;
typedef struct dbk_book dbk_book;

DBK_API const char* dbk_version(void);

/* {"code":..,"message":..,"location":..} for the last failing call on this
 * thread, or "" if none. Owned by the library. */
DBK_API const char* dbk_last_error(void);

/* Strings returned through char** out parameters are owned by the caller. */
DBK_API void dbk_string_free(char* s);

/* Documents. Every *_to_json returns canonical JSON. */
DBK_API dbk_status dbk_env_parse(const char* json, dbk_env** out);
DBK_API void dbk_env_free(dbk_env* env);
DBK_API dbk_status dbk_env_to_json(const dbk_env* env, char** out);

/* Beliefs are parsed without validation; see dbk_validate. */
DBK_API dbk_status dbk_beliefs_parse(const dbk_env* env, const char* json,
                                     dbk_beliefs** out);
DBK_API void dbk_beliefs_free(dbk_beliefs* beliefs);
DBK_API dbk_status dbk_beliefs_to_json(const dbk_env* env,
                                       const dbk_beliefs* beliefs, char** out);

/* With env == NULL the states are taken in order of first appearance. */
DBK_API dbk_status dbk_lcps_parse(const dbk_env* env, const char* json,
                                  dbk_lcps** out);
DBK_API void dbk_lcps_free(dbk_lcps* lcps);
DBK_API dbk_status dbk_lcps_to_json(const dbk_lcps* lcps, char** out);

/* States are those of the longest subset key. */
DBK_API dbk_status dbk_cps_parse(const char* json, dbk_cps** out);
DBK_API void dbk_cps_free(dbk_cps* cps);
DBK_API dbk_status dbk_cps_to_json(const dbk_cps* cps, char** out);

DBK_API dbk_status dbk_book_parse(const dbk_env* env, const char* json,
                                  dbk_book** out);
DBK_API void dbk_book_free(dbk_book* book);
DBK_API dbk_status dbk_book_to_json(const dbk_env* env, const dbk_book* book,
                                    char** out);

/* Operations. Each writes a JSON report to *report and returns DBK_OK for a
 * positive verdict or DBK_NEGATIVE for a negative one. Optional handles may
 * be NULL. */

/* Environment facts plus belief and gamble validation. */
DBK_API dbk_status dbk_validate(const dbk_env* env, const dbk_beliefs* beliefs,
                                const dbk_book* book, char** report);
DBK_API dbk_status dbk_check_forward(const dbk_env* env,
                                     const dbk_beliefs* beliefs, char** report);
DBK_API dbk_status dbk_check_complete(const dbk_env* env,
                                      const dbk_beliefs* beliefs, char** report);
/* Positive: the report is the LCPS document. Negative: the violation. */
DBK_API dbk_status dbk_extract_lcps(const dbk_env* env,
                                    const dbk_beliefs* beliefs, char** report);
/* The report is the belief document. The LCPS must be over the env states. */
DBK_API dbk_status dbk_derive_beliefs(const dbk_env* env, const dbk_lcps* lcps,
                                      char** report);
DBK_API dbk_status dbk_lcps_to_cps(const dbk_lcps* lcps, char** report);
/* Negative when the CPS violates a row condition or the chain rule. */
DBK_API dbk_status dbk_cps_to_lcps(const dbk_cps* cps, char** report);
/* max_len == 0 selects the number of contingencies. */
DBK_API dbk_status dbk_check_siniscalchi(const dbk_env* env,
                                         const dbk_beliefs* beliefs,
                                         uint32_t max_len, char** report);
/* Positive iff a Dutch book and, when beliefs are given, accepted. */
DBK_API dbk_status dbk_verify_book(const dbk_env* env,
                                   const dbk_beliefs* beliefs,
                                   const dbk_book* book, char** report);
DBK_API dbk_status dbk_verify_deterministic(const dbk_env* env,
                                            const dbk_beliefs* beliefs,
                                            const dbk_book* book,
                                            char** report);
/* epsilon is "p/q" or NULL. Consistent beliefs yield DBK_PRECONDITION. */
DBK_API dbk_status dbk_synth_book(const dbk_env* env,
                                  const dbk_beliefs* beliefs,
                                  const char* epsilon, char** report);
DBK_API dbk_status dbk_synth_deterministic(const dbk_env* env,
                                           const dbk_beliefs* beliefs,
                                           const char* epsilon, char** report);
/* state == NULL draws the state uniformly each round. threads == 0 uses
 * the hardware concurrency. Negative when a state deviates from its exact
 * expectation by more than four standard errors. */
DBK_API dbk_status dbk_simulate(const dbk_env* env, const dbk_beliefs* beliefs,
                                const dbk_book* book, uint64_t rounds,
                                uint64_t seed, const char* state,
                                uint32_t threads, char** report);

#ifdef __cplusplus
}
#endif

#endif /* DUTCHBOOK_DUTCHBOOK_H_ */
