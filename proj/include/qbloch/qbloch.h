// Copyright 2026 The qbloch Authors.
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

/* C interface to the qbloch library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns a qb_status; on failure qb_last_error() describes the
 * problem (thread-local, valid until the next failing call on the thread).
 * Strings returned through char** out-parameters are heap-allocated JSON and
 * must be released with qb_string_free. */

#ifndef QBLOCH_QBLOCH_H_
#define QBLOCH_QBLOCH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QB_API __declspec(dllexport)
#else
#define QB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qb_status {
  QB_OK = 0,
  QB_ERR_INVALID_ARGUMENT = 1,
  QB_ERR_DIMENSION = 2,
  QB_ERR_NOT_HERMITIAN = 3,
  QB_ERR_NOT_POSITIVE = 4,
  QB_ERR_NOT_TRACE_PRESERVING = 5,
  QB_ERR_CAP_EXCEEDED = 6,
  QB_ERR_PARSE = 7,
  QB_ERR_NOT_CERTIFIED = 8,
  QB_ERR_INTERNAL = 99
} qb_status;

typedef struct qb_channel qb_channel;
typedef struct qb_cloner qb_cloner;

QB_API const char* qb_version(void);
/* Seed used when callers do not supply one. */
QB_API uint64_t qb_default_seed(void);
QB_API const char* qb_last_error(void);
QB_API const char* qb_status_name(qb_status status);
QB_API void qb_string_free(char* s);

/* Tensor dimension cap (default 4096). */
QB_API qb_status qb_set_dim_cap(size_t cap);
QB_API size_t qb_dim_cap(void);

/* {"d": d, "basis": [matrix, ...]} */
QB_API qb_status qb_basis_json(int d, char** out);

/* Density matrix JSON -> {"d", "lambda"}. */
QB_API qb_status qb_bloch_to_json(const char* matrix_json, char** out);
/* {"d", "lambda"} -> {"matrix", "physical", "min_eigenvalue"}. */
QB_API qb_status qb_bloch_from_json(const char* bloch_json, char** out);

QB_API qb_status qb_channel_from_json(const char* json, qb_channel** out);
QB_API qb_status qb_channel_depolarizing(int d, double xi, qb_channel** out);
QB_API qb_status qb_channel_random(int d, int rank, uint64_t seed,
                                   qb_channel** out);
QB_API qb_status qb_channel_to_json(const qb_channel* channel, char** out);
QB_API void qb_channel_free(qb_channel* channel);

/* AffineRep, CPTP certificates and a worst-case merit report. */
QB_API qb_status qb_channel_analyze(const qb_channel* channel, int samples,
                                    int refine_iterations, uint64_t seed,
                                    char** out);
/* TwirlReport. */
QB_API qb_status qb_channel_twirl(const qb_channel* channel, int samples,
                                  uint64_t seed, char** out);

QB_API qb_status qb_cloner_werner(int d, int n, int m, qb_cloner** out);
QB_API qb_status qb_cloner_optimal_qubit_12(qb_cloner** out);
QB_API qb_status qb_cloner_compose(const qb_cloner* second,
                                   const qb_cloner* first, qb_cloner** out);
QB_API qb_status qb_cloner_from_json(const char* json, qb_cloner** out);
QB_API qb_status qb_cloner_to_json(const qb_cloner* cloner, char** out);
QB_API qb_status qb_cloner_choi_json(const qb_cloner* cloner, char** out);
QB_API void qb_cloner_free(qb_cloner* cloner);

/* ShrinkResult; allow_uncertified != 0 accepts asymmetric cloners. */
QB_API qb_status qb_cloner_shrink(const qb_cloner* cloner, int samples,
                                  uint64_t seed, int allow_uncertified,
                                  char** out);
/* {"t", "xi", "spectrum", "werner_deviation", ...}. */
QB_API qb_status qb_optimize_qubit_12(char** out);

/* Runs a verification suite; *passed is set to 1 iff every check passed. */
QB_API qb_status qb_verify(const char* suite, uint64_t seed,
                           int include_timings, char** out, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* QBLOCH_QBLOCH_H_ */
