// Copyright 2026 The tpk Authors
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

#ifndef TPK_TPK_H_
#define TPK_TPK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TPK_BUILDING_LIBRARY)
#define TPK_API __declspec(dllexport)
#else
#define TPK_API __declspec(dllimport)
#endif
#else
#define TPK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tpk_status {
  TPK_OK = 0,
  TPK_ERR_DIMENSION_MISMATCH = 1,
  TPK_ERR_NON_ORTHONORMAL_BASIS = 2,
  TPK_ERR_CERTIFICATE_FAILURE = 3,
  TPK_ERR_INVALID_FORM = 4,
  TPK_ERR_NO_CONVERGENCE = 5,
  TPK_ERR_NOT_POSITIVE = 6,
  TPK_ERR_BAD_GRID = 7,
  TPK_ERR_GRID_MISMATCH = 8,
  TPK_ERR_INVALID_SPEC = 9,
  TPK_ERR_UNKNOWN_SUITE = 10,
  TPK_ERR_IO = 11,
  TPK_ERR_PARSE = 12,
  TPK_ERR_INVALID_ARGUMENT = 13,
  TPK_ERR_INTERNAL = 99
} tpk_status;

/* Opaque handles. Every handle returned through an out-parameter is owned by
 * the caller and released with the matching *_free function. */
typedef struct tpk_matrix tpk_matrix;
typedef struct tpk_pair tpk_pair;
typedef struct tpk_halmos tpk_halmos;
typedef struct tpk_resolvent_trace tpk_resolvent_trace;

TPK_API const char *tpk_version(void);
/* Message for the most recent failure on the calling thread ("" if none). */
TPK_API const char *tpk_last_error(void);
TPK_API const char *tpk_status_name(tpk_status status);
/* Releases strings returned through char** out-parameters. */
TPK_API void tpk_string_free(char *s);

/* Complex matrices. `data` holds rows*cols (re, im) pairs, row-major. */
TPK_API tpk_status tpk_matrix_create(size_t rows, size_t cols,
                                     const double *data, tpk_matrix **out);
TPK_API tpk_status tpk_matrix_from_json(const char *text, tpk_matrix **out);
TPK_API tpk_status tpk_matrix_to_json(const tpk_matrix *m, char **out);
TPK_API size_t tpk_matrix_rows(const tpk_matrix *m);
TPK_API size_t tpk_matrix_cols(const tpk_matrix *m);
TPK_API tpk_status tpk_matrix_get(const tpk_matrix *m, size_t i, size_t j,
                                  double *re, double *im);
TPK_API void tpk_matrix_free(tpk_matrix *m);

/* Certified projector pairs. */
TPK_API tpk_status tpk_pair_generate(int64_t dim, int64_t rank_p,
                                     int64_t rank_q, int64_t shared_rank,
                                     uint64_t seed, tpk_pair **out);
TPK_API tpk_status tpk_pair_from_matrices(const tpk_matrix *p,
                                          const tpk_matrix *q, tpk_pair **out);
TPK_API tpk_status tpk_pair_from_json(const char *text, tpk_pair **out);
TPK_API tpk_status tpk_pair_to_json(const tpk_pair *pair, char **out);
TPK_API tpk_status tpk_pair_p(const tpk_pair *pair, tpk_matrix **out);
TPK_API tpk_status tpk_pair_q(const tpk_pair *pair, tpk_matrix **out);
TPK_API size_t tpk_pair_dim(const tpk_pair *pair);
/* Rank of R(P) ∩ R(Q). */
TPK_API tpk_status tpk_pair_intersection_rank(const tpk_pair *pair,
                                              int64_t *out);
TPK_API void tpk_pair_free(tpk_pair *pair);

/* Canonical form. */
TPK_API tpk_status tpk_halmos_decompose(const tpk_pair *pair,
                                        tpk_halmos **out);
/* Writes the six subspace ranks. */
TPK_API tpk_status tpk_halmos_ranks(const tpk_halmos *form, int64_t ranks[6]);
TPK_API tpk_status tpk_halmos_reconstruct(const tpk_halmos *form,
                                          tpk_pair **out);
TPK_API tpk_status tpk_halmos_to_json(const tpk_halmos *form, char **out);
TPK_API void tpk_halmos_free(tpk_halmos *form);

/* Friedrichs cosine of (R(P), R(Q)) and the angle in radians. */
TPK_API tpk_status tpk_angle(const tpk_pair *pair, double *c, double *angle);
/* Full norm-identity report as JSON. */
TPK_API tpk_status tpk_angle_report_json(const tpk_pair *pair, char **out);

/* Iterative intersection projector. On TPK_ERR_NO_CONVERGENCE *out still
 * receives the full trace. */
TPK_API tpk_status tpk_resolvent_run(const tpk_pair *pair, double tol,
                                     int64_t n_max, tpk_resolvent_trace **out);
TPK_API int tpk_resolvent_converged(const tpk_resolvent_trace *trace);
TPK_API size_t tpk_resolvent_steps(const tpk_resolvent_trace *trace);
TPK_API tpk_status tpk_resolvent_projector(const tpk_resolvent_trace *trace,
                                           tpk_matrix **out);
TPK_API tpk_status tpk_resolvent_csv(const tpk_resolvent_trace *trace,
                                     char **out);
TPK_API tpk_status tpk_resolvent_summary_json(
    const tpk_resolvent_trace *trace, char **out);
TPK_API void tpk_resolvent_trace_free(tpk_resolvent_trace *trace);

/* Verification suites. */
typedef struct tpk_verify_options {
  const char *suite;
  int64_t dim;
  size_t trials;
  uint64_t seed;
  double tol_scale;          /* 1.0 keeps the default tolerances */
  const tpk_pair *fixture;   /* optional; forces a single trial */
  int64_t n_max;             /* <= 0 for the default */
  double resolvent_tol;      /* <= 0 for the default */
  const size_t *grids;       /* optional counterexample grid sizes */
  size_t n_grids;
  int include_wall_time;
} tpk_verify_options;

/* Fills `options` with library defaults for `suite`. */
TPK_API void tpk_verify_options_init(tpk_verify_options *options,
                                     const char *suite);
TPK_API size_t tpk_suite_count(void);
TPK_API const char *tpk_suite_name(size_t index);
/* `*passed` is set even when the report is a failure; the status only
 * reports errors that prevented the suite from running. */
TPK_API tpk_status tpk_verify(const tpk_verify_options *options,
                              char **report_json, int *passed);

/* C([0,1]; M2) counterexample study. */
TPK_API tpk_status tpk_counterexample(const size_t *grids, size_t n_grids,
                                      size_t trials, uint64_t seed,
                                      char **report_json, int *passed);

#ifdef __cplusplus
}
#endif

#endif  // TPK_TPK_H_
