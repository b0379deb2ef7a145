/* Copyright 2026 The convsec Authors.
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

/* C interface of the convsec library. Instances are opaque handles;
 * structured inputs and outputs travel as JSON strings. Every fallible call
 * returns a cs_status and, on failure, leaves a message retrievable with
 * cs_last_error() on the calling thread. Strings returned through char**
 * out-parameters are owned by the caller and released with cs_free_string.
 */

#ifndef CONVSEC_CONVSEC_H_
#define CONVSEC_CONVSEC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CONVSEC_BUILDING_LIBRARY)
#define CS_API __attribute__((visibility("default")))
#else
#define CS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_INVALID_ARGUMENT = 1,
  CS_ERR_DIMENSION_MISMATCH = 2,
  CS_ERR_INVALID_COST = 3,
  CS_ERR_CURVE_RANGE_EXCEEDED = 4,
  CS_ERR_REQUIRES_SEPARABLE = 5,
  CS_ERR_NO_GOOD_CLASSIFIER = 6,
  CS_ERR_TOO_LARGE = 7,
  CS_ERR_UNKNOWN_ID = 8,
  CS_ERR_PARSE = 9,
  CS_ERR_GUARD_VIOLATION = 10,
  CS_ERR_INTERNAL = 11
} cs_status;

typedef struct cs_instance cs_instance;

CS_API const char* cs_version(void);
CS_API const char* cs_status_name(cs_status status);
/* Message of the last failed call on this thread; "" if none. */
CS_API const char* cs_last_error(void);
/* Applies the CS_LOG environment variable. */
CS_API void cs_configure_logging(void);
CS_API void cs_free_string(char* s);

/* Parses instance JSON. strict = 0 admits quadratic costs that fail
 * validation, so that verification can report on them. */
CS_API cs_status cs_instance_from_json(const char* json, int strict,
                                       cs_instance** out);
/* Generates an instance from a generator config, or from an experiment
 * spec's "generator" member. A null config uses the defaults. */
CS_API cs_status cs_instance_generate(const char* config_json, uint64_t seed,
                                      cs_instance** out);
CS_API cs_status cs_instance_to_json(const cs_instance* inst, char** out);
CS_API cs_status cs_instance_size(const cs_instance* inst, size_t* out);
CS_API cs_status cs_instance_dim(const cs_instance* inst, int* out);
CS_API void cs_instance_free(cs_instance* inst);

/* Runs one pipeline. Offline pipelines write an OfflineSolution JSON, the
 * others a trial record. options_json may be null or hold "eps", "eta",
 * "beta", "secretary_prob" and "preprocess". */
CS_API cs_status cs_solve(const cs_instance* inst, const char* pipeline,
                          uint64_t seed, const char* options_json,
                          char** out_json);

/* Runs an experiment spec; overrides_json (nullable) is merged into the
 * spec first. */
CS_API cs_status cs_experiment(const char* spec_json,
                               const char* overrides_json, int workers,
                               char** out_csv, char** out_summary_json);

/* Runs the self-check suites named in the comma-separated list (null means
 * all, "" means none) at level "quick" or "full". *all_passed receives 1
 * or 0. */
CS_API cs_status cs_verify(const char* level, const char* suites,
                           const cs_instance* inst, uint64_t seed,
                           char** out_report_json, int* all_passed);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* CONVSEC_CONVSEC_H_ */
