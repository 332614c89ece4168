// Copyright 2026 The cpmult Authors
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

#ifndef CPMULT_CPMULT_H_
#define CPMULT_CPMULT_H_

/* C interface to the cpmult library. All objects are opaque handles owned by
 * the caller and released with the matching *_free function. Functions return
 * a cpm_status; on failure cpm_last_error() describes the failure for the
 * calling thread until its next cpmult call. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CPM_API __declspec(dllexport)
#else
#define CPM_API __attribute__((visibility("default")))
#endif

typedef enum cpm_status {
  CPM_OK = 0,
  CPM_ERR_PARSE = 1,
  CPM_ERR_SHAPE = 2,
  CPM_ERR_INVALID_SYSTEM = 3,
  CPM_ERR_BAD_ELEMENT = 4,
  CPM_ERR_NOT_CP = 5,
  CPM_ERR_NOT_UNITAL = 6,
  CPM_ERR_NOT_CENTRAL = 7,
  CPM_ERR_NOT_POSITIVE = 8,
  CPM_ERR_NO_TRACE = 9,
  CPM_ERR_PRECONDITION = 10,
  CPM_ERR_ROUTES_DISAGREE = 11,
  CPM_ERR_MATH = 12, /* any other mathematical precondition */
  CPM_ERR_ARGUMENT = 13,
  CPM_ERR_INTERNAL = 14
} cpm_status;

typedef struct cpm_system cpm_system;
typedef struct cpm_multiplier cpm_multiplier;
typedef struct cpm_report cpm_report;

typedef struct cpm_config {
  double tol;    /* > 0; default 1e-9 */
  uint64_t seed; /* default 0 */
} cpm_config;

typedef struct cpm_verdict {
  int verdict;
  int route_positive_type;
  int route_sampling;
  int route_factorization;
  int dilation_dim;
  double factorization_residual;
  double cb_SF;
  double cb_SNF;
  double cb_Fe;
} cpm_verdict;

CPM_API const char* cpm_version(void);
CPM_API const char* cpm_last_error(void);
CPM_API const char* cpm_status_name(cpm_status status);
CPM_API cpm_config cpm_default_config(void);

/* Systems from JSON text. */
CPM_API cpm_status cpm_system_from_json(const char* json, double tol, cpm_system** out);
CPM_API void cpm_system_free(cpm_system* sys);
CPM_API int cpm_system_order(const cpm_system* sys);
CPM_API int cpm_system_algebra_dim(const cpm_system* sys);
CPM_API int cpm_system_has_trace(const cpm_system* sys);

/* Herz-Schur multipliers over a system. */
CPM_API cpm_status cpm_multiplier_from_json(const cpm_system* sys, const char* json, cpm_multiplier** out);
CPM_API cpm_status cpm_multiplier_identity(const cpm_system* sys, cpm_multiplier** out);
CPM_API void cpm_multiplier_free(cpm_multiplier* f);
/* Writes the dim A x dim A action matrix of F(t), row-major, interleaved re/im
 * (2 * dim A * dim A doubles). */
CPM_API cpm_status cpm_multiplier_action(const cpm_multiplier* f, int t, double* out, size_t out_len);
CPM_API cpm_status cpm_multiplier_certify(const cpm_multiplier* f, const cpm_config* cfg, cpm_verdict* out);
CPM_API cpm_status cpm_multiplier_block_diag_residual(const cpm_multiplier* f, const cpm_config* cfg,
                                                      double* out);

/* Commands: JSON text in, report out. A report is produced whenever the inputs
 * could be read; its exit code follows the CLI contract (0 pass, 1
 * mathematical failure, 2 input error, 3 disagreeing routes). cfg may be NULL.
 * Optional text arguments may be NULL. */
CPM_API cpm_status cpm_cmd_validate(const cpm_config* cfg, const char* system, cpm_report** out);
CPM_API cpm_status cpm_cmd_check_schur(const cpm_config* cfg, const char* system, const char* phi,
                                       cpm_report** out);
CPM_API cpm_status cpm_cmd_check_hs(const cpm_config* cfg, const char* system, const char* f, cpm_report** out);
CPM_API cpm_status cpm_cmd_crossed(const cpm_config* cfg, const char* system, const char* element,
                                   cpm_report** out);
/* mode: "haagerup" or "nuclearity". */
CPM_API cpm_status cpm_cmd_approx(const cpm_config* cfg, const char* system, const char* family, const char* mode,
                                  cpm_report** out);
CPM_API cpm_status cpm_cmd_amenable(const cpm_config* cfg, const char* system, const char* t, const char* phi,
                                    cpm_report** out);

CPM_API int cpm_report_exit_code(const cpm_report* r);
/* Pointers stay valid until cpm_report_free. */
CPM_API const char* cpm_report_json(const cpm_report* r);
CPM_API const char* cpm_report_text(const cpm_report* r);
CPM_API void cpm_report_free(cpm_report* r);

#ifdef __cplusplus
}
#endif

#endif /* CPMULT_CPMULT_H_ */
